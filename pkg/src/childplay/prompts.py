"""Prompt templates: versioned text assets plus placeholder substitution.

The templates live under ``childplay/assets/*.txt`` and are treated as
frozen wire data — rendering only ever substitutes the named placeholders
``{board_size_minus_1}``, ``{n_pieces}`` and ``{pieces}``; every other byte
is preserved.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

PLACEHOLDER_RE = re.compile(r"\{[a-z_0-9]+\}")


class TemplateError(ValueError):
    """A placeholder was left unresolved or a template mismatched its game."""


@dataclass(frozen=True)
class PromptTemplate:
    game_kind: str
    template: str


@lru_cache(maxsize=None)
def load_template(game_kind: str) -> PromptTemplate:
    path = resources.files("childplay").joinpath("assets", f"{game_kind}.txt")
    text = path.read_text(encoding="ascii")
    if text.endswith("\n"):
        text = text[:-1]
    return PromptTemplate(game_kind=game_kind, template=text)


def substitute(template: PromptTemplate, **values) -> str:
    text = template.template
    for key, value in values.items():
        text = text.replace("{" + key + "}", str(value))
    leftover = PLACEHOLDER_RE.search(text)
    if leftover:
        raise TemplateError(
            f"unresolved placeholder {leftover.group()} in {template.game_kind} template"
        )
    return text


def render_prompt(template: PromptTemplate, session) -> str:
    """Render ``template`` for a live session, pulling values from its engine."""
    if template.game_kind != session.game_kind:
        raise TemplateError(
            f"template for {template.game_kind!r} used with a {session.game_kind!r} session"
        )
    return session.intro_prompt()

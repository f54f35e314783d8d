"""Game engines, one per game kind."""

from .battleship import Battleship
from .connectfour import ConnectFour
from .gts_game import GuessTheSmiles
from .lcl_games import LclGeneration, LclValidity
from .shapes import Shapes
from .tictactoe import TicTacToe

ENGINE_FACTORIES = {
    "tictactoe": TicTacToe,
    "connectfour": ConnectFour,
    "battleship": Battleship,
    "shapes": Shapes,
    "lcl_validity": LclValidity,
    "lcl_generation": LclGeneration,
    "gts": GuessTheSmiles,
}

__all__ = [
    "Battleship",
    "ConnectFour",
    "ENGINE_FACTORIES",
    "GuessTheSmiles",
    "LclGeneration",
    "LclValidity",
    "Shapes",
    "TicTacToe",
]

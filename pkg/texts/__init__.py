__all__ = ['cli']
from . import *

"""Handles space specific norms and weights."""
from ._space import SpaceManager, SPACE_TAGS

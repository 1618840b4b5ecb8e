from ._wavepax import *  # noqa: F401,F403

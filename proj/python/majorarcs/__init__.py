from ._majorarcs import *  # noqa: F401,F403

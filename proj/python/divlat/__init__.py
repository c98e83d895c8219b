from ._divlat import *  # noqa: F401,F403

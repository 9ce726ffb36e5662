from qslsim._core import *  # noqa: F401,F403
from qslsim._core import __version__  # noqa: F401

try:
    from ._q1prep import *  # noqa: F401,F403
    from ._q1prep import __version__  # noqa: F401
except ImportError:  # in-tree builds keep the extension next to the package
    from _q1prep import *  # noqa: F401,F403
    from _q1prep import __version__  # noqa: F401

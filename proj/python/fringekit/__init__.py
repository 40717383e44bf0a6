"""Classical wave-optics runs of the polarization eraser, delayed-choice
eraser and wire-grid imaging experiments, backed by the C++ core."""

try:
    from ._fringekit import *  # noqa: F401,F403  (installed layout)
    from ._fringekit import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension sits next to the package
    from _fringekit import *  # noqa: F401,F403
    from _fringekit import __version__  # noqa: F401

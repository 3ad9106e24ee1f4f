''' For package documentation, see README '''

from .version import __version__, __rpm_version__, __git_hash__

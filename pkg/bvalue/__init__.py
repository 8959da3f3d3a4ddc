from importlib import metadata

try:
    __version__ = metadata.version('bvalue')
except metadata.PackageNotFoundError:
    # source checkout
    try:
        from _version import __version__
    except ImportError:
        __version__ = '0.0.0'

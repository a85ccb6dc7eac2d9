__version__ = '1.0.0'


# Documentation shipped with the source tree
DOCS_PATH = "docs/"
CONFIG_DOCS_LINK = DOCS_PATH + "configuration.rst"

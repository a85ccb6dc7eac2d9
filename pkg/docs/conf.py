# -*- coding: utf-8 -*-
#
# bethe documentation build configuration file.

import os
from datetime import datetime
import sys

sys.path.insert(0, os.path.abspath('..'))
from bethe import __version__  # noqa

YEAR = datetime.now().year
VERSION = __version__.rsplit('.', 1)[0]

extensions = []
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'bethe'
copyright = u'{}, bethe developers'.format(YEAR)
author = u'bethe developers'

version = VERSION
release = __version__
language = None
exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'default'
htmlhelp_basename = 'bethedoc'

latex_documents = [
    (master_doc, 'bethe.tex', u'bethe Documentation', author, 'manual'),
]
man_pages = [
    (master_doc, 'bethe', u'bethe Documentation', [author], 1),
]

on_rtd = os.environ.get('READTHEDOCS', None) == 'True'
if not on_rtd:  # only import and set the theme if we're building docs locally
    import sphinx_rtd_theme
    html_theme = 'sphinx_rtd_theme'
    html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]

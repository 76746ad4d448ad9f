"""Test-side access to the shared corpus and its named objects."""
from cosetkit.corpus import *  # noqa: F401,F403

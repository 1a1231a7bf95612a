import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

settings.register_profile(
    'nilhodge',
    derandomize=True,
    max_examples=30,
    deadline=None,
)
settings.load_profile('nilhodge')

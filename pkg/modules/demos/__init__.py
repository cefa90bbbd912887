"""
Reproductions of the worked examples with their expected values.
"""

from modules.demos.demos import DEMOS, DemoOutcome, run_all, run_demo

__all__ = ['DEMOS', 'DemoOutcome', 'run_all', 'run_demo']

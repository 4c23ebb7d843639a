# Context package
from src.context_.context import precision_bits, results_dir, log_level

__all__ = ['precision_bits', 'results_dir', 'log_level']

__all__ = ['format_output', 'cache', 'scalars']

class NonphysicalParameters(ValueError):
    pass

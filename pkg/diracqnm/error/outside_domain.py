class OutsideDomain(ValueError):
    pass

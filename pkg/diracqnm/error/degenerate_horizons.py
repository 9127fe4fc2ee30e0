class DegenerateHorizons(Exception):
    pass

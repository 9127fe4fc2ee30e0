class GammaPole(Exception):
    pass


class RadiusExceeded(Exception):
    pass

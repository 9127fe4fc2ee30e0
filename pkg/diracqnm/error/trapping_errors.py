class NoPhotonSphere(Exception):
    pass


class NoInteriorTrapping(Exception):
    pass


class DegenerateTrapping(Exception):
    pass

from p3p import from_primes

# Toy keys small enough for exhaustive checks: n = 15 and n = 35.
KEY15 = from_primes(3, 5)
KEY35 = from_primes(5, 7)


class ScriptedRandom:
    """RandomSource replaying a fixed list of randrange results."""

    def __init__(self, values):
        self.values = list(values)

    def randrange(self, start, stop=None):
        if stop is None:
            start, stop = 0, start
        value = self.values.pop(0)
        assert start <= value < stop, (
            f"scripted value {value} outside [{start}, {stop})"
        )
        return value

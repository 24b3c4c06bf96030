"""Paillier keys, the probabilistic scheme, and its homomorphic operations.

Encryption maps (m, x) to g^m * x^n mod n^2; decryption recovers m through
the Carmichael value lambda = lcm(p-1, q-1). Ciphertexts multiply to add
their plaintexts, exponentiate to scale them, and can be re-randomized
without the private key (self-blinding). Keys and ciphertexts are
immutable; every operation is pure.
"""

import enum
import hashlib
from dataclasses import dataclass, field

from . import numtheory as nt
from .errors import (
    DomainError,
    InternalError,
    KeyMismatch,
    MalformedCiphertext,
    NotInvertible,
    PlaintextOutOfRange,
)


class BaseStrategy(enum.Enum):
    """How keygen picks the residue base g."""

    SAFE_DEFAULT = "safe-default"  # g = n + 1, always valid, cheapest to use
    RANDOM = "random"  # drawn from Z*_{n^2} and validated

    def __str__(self):
        return self.value


class SelfBlindMode(enum.Enum):
    """Which blinding factor rerandomize multiplies in."""

    UNIT_POWER = "unit-power"  # x^n for a fresh unit x
    BASE_POWER = "base-power"  # g^(n*r) for a fresh r


_RANDOM_BASE_ATTEMPTS = 128


def fingerprint_modulus(n: int) -> bytes:
    """Digest identifying a modulus, carried by ciphertexts for key checks."""
    return hashlib.sha256(n.to_bytes((n.bit_length() + 7) // 8, "big")).digest()


@dataclass(frozen=True)
class PublicKey:
    """Everything a sender or verifier needs: the modulus and residue base."""

    n: int
    g: int
    n_squared: int = field(init=False, repr=False)
    fingerprint: bytes = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "n_squared", self.n * self.n)
        object.__setattr__(self, "fingerprint", fingerprint_modulus(self.n))

    def __repr__(self):
        return (
            f"<PublicKey {self.n.bit_length()}-bit "
            f"{self.fingerprint.hex()[:12]}>"
        )


@dataclass(frozen=True)
class PrivateKey:
    """Factorization trapdoor plus the precomputed decryption inverse mu."""

    p: int = field(repr=False)
    q: int = field(repr=False)
    lam: int = field(repr=False)  # lcm(p-1, q-1)
    mu: int = field(repr=False)  # L(g^lam mod n^2)^-1 mod n
    public: PublicKey

    def __repr__(self):
        return f"<PrivateKey for {self.public!r}>"


@dataclass(frozen=True)
class Ciphertext:
    """Element of Z*_{n^2} tagged with the fingerprint of its key's modulus."""

    value: int
    key_fingerprint: bytes = field(repr=False)


def validate_residue_base(g: int, n: int, lam: int) -> bool:
    """True iff g generates residue classes: gcd(L(g^lam mod n^2), n) = 1."""
    n_squared = n * n
    if not 0 < g < n_squared or nt.gcd(g, n_squared) != 1:
        raise DomainError("base is not a unit modulo n^2")
    return nt.gcd(nt.l_function(pow(g, lam, n_squared), n), n) == 1


def _derive(p: int, q: int, g: int | None, rng) -> PrivateKey:
    n = p * q
    lam = nt.lcm(p - 1, q - 1)
    n_squared = n * n
    if g is None:
        for _ in range(_RANDOM_BASE_ATTEMPTS):
            g = nt.random_unit(n_squared, rng)
            if validate_residue_base(g, n, lam):
                break
        else:
            raise InternalError(
                f"no residue base found in {_RANDOM_BASE_ATTEMPTS} draws"
            )
    elif not validate_residue_base(g, n, lam):
        raise DomainError(f"{g} is not a residue base for n={n}")
    mu = nt.mod_inv(nt.l_function(pow(g, lam, n_squared), n), n)
    return PrivateKey(p=p, q=q, lam=lam, mu=mu, public=PublicKey(n=n, g=g))


def keygen(
    bits: int,
    base_strategy: BaseStrategy = BaseStrategy.SAFE_DEFAULT,
    rng: nt.RandomSource | None = None,
) -> PrivateKey:
    """Generate a fresh key with two distinct ``bits``-bit primes.

    Retries until gcd(n, lambda) = 1, which guarantees the principal n-th
    root exponent 1/n mod lambda exists (the trapdoor permutation and the
    signature both need it). Same-length primes make the retry rare.
    """
    if bits < 4:
        raise DomainError("need at least 4 bits per prime")
    rng = rng if rng is not None else nt.system_random()
    while True:
        p = nt.gen_prime(bits, rng)
        q = nt.gen_prime(bits, rng)
        if p == q:
            continue
        if nt.gcd(p * q, nt.lcm(p - 1, q - 1)) != 1:
            continue
        break
    g = p * q + 1 if base_strategy is BaseStrategy.SAFE_DEFAULT else None
    return _derive(p, q, g, rng)


def from_primes(p: int, q: int, g: int | None = None) -> PrivateKey:
    """Key from explicit primes; meant for toy moduli in tests and demos.

    ``g`` defaults to n + 1. Rejects prime pairs with gcd(n, lambda) != 1
    (e.g. p=3, q=7), for which no valid residue base exists.
    """
    if p == q:
        raise DomainError("primes must be distinct")
    for candidate in (p, q):
        if not nt.is_probable_prime(candidate, nt.DEFAULT_MR_ROUNDS):
            raise DomainError(f"{candidate} is not prime")
    n = p * q
    lam = nt.lcm(p - 1, q - 1)
    if nt.gcd(n, lam) != 1:
        raise DomainError(f"gcd(n, lambda) = {nt.gcd(n, lam)} != 1; key unusable")
    return _derive(p, q, n + 1 if g is None else g, None)


def _check_plaintext(pk: PublicKey, m: int) -> None:
    if not 0 <= m < pk.n:
        raise PlaintextOutOfRange(f"plaintext must be in [0, {pk.n}), got {m}")


def _check_key(pk: PublicKey, *ciphertexts: Ciphertext) -> None:
    for c in ciphertexts:
        if c.key_fingerprint != pk.fingerprint:
            raise KeyMismatch("ciphertext was created under a different key")


def _pow_g(pk: PublicKey, exp: int) -> int:
    # (1 + n)^e = 1 + e*n mod n^2, so the default base never needs pow().
    if pk.g == pk.n + 1:
        return (1 + exp % pk.n * pk.n) % pk.n_squared
    return pow(pk.g, exp, pk.n_squared)


def _raw_encrypt(pk: PublicKey, m: int, x: int) -> int:
    return _pow_g(pk, m) * pow(x, pk.n, pk.n_squared) % pk.n_squared


def encrypt(
    pk: PublicKey, m: int, rng: nt.RandomSource | None = None
) -> Ciphertext:
    """Randomized encryption: g^m * x^n mod n^2 for a fresh unit x."""
    _check_plaintext(pk, m)
    x = nt.random_unit(pk.n, rng)
    return Ciphertext(_raw_encrypt(pk, m, x), pk.fingerprint)


def encrypt_with_nonce(pk: PublicKey, m: int, x: int) -> Ciphertext:
    """Deterministic form of encrypt with the unit x supplied by the caller."""
    _check_plaintext(pk, m)
    if x < 1 or nt.gcd(x, pk.n) != 1:
        raise NotInvertible(f"nonce {x} is not a unit modulo {pk.n}")
    return Ciphertext(_raw_encrypt(pk, m, x), pk.fingerprint)


def _check_ciphertext_value(pk: PublicKey, value: int) -> None:
    if not 0 < value < pk.n_squared or nt.gcd(value, pk.n_squared) != 1:
        raise MalformedCiphertext(f"{value} is not a unit modulo n^2")


def decrypt(sk: PrivateKey, c: Ciphertext) -> int:
    """Recover m = L(c^lambda mod n^2) * mu mod n."""
    pk = sk.public
    _check_key(pk, c)
    _check_ciphertext_value(pk, c.value)
    return nt.l_function(pow(c.value, sk.lam, pk.n_squared), pk.n) * sk.mu % pk.n


def extract_class(sk: PrivateKey, w: int, base: int) -> int:
    """Residue class of w relative to ``base``: the unique exponent in
    w = base^class * (n-th power of a unit)."""
    pk = sk.public
    if not 0 < w < pk.n_squared or nt.gcd(w, pk.n_squared) != 1:
        raise DomainError(f"{w} is not a unit modulo n^2")
    if base == pk.g:
        denominator_inv = sk.mu
    else:
        if not validate_residue_base(base, pk.n, sk.lam):
            raise DomainError(f"{base} is not a valid residue base")
        denominator_inv = nt.mod_inv(
            nt.l_function(pow(base, sk.lam, pk.n_squared), pk.n), pk.n
        )
    return (
        nt.l_function(pow(w, sk.lam, pk.n_squared), pk.n)
        * denominator_inv
        % pk.n
    )


def extract_residue(sk: PrivateKey, w: int) -> int:
    """The n-th-power part left after dividing out the key base's class."""
    pk = sk.public
    cls = extract_class(sk, w, pk.g)
    return w * nt.mod_inv(_pow_g(pk, cls), pk.n_squared) % pk.n_squared


def principal_root(sk: PrivateKey, value: int) -> int:
    """The unique n-th root below n of an n-residue.

    ``value`` may be given modulo n^2; it is reduced modulo n first.
    Meaningful only when the reduced value is a unit modulo n.
    """
    pk = sk.public
    return pow(value % pk.n, nt.mod_inv(pk.n, sk.lam), pk.n)


def homomorphic_add(pk: PublicKey, c1: Ciphertext, c2: Ciphertext) -> Ciphertext:
    """Ciphertext of m1 + m2 mod n, by multiplying the ciphertexts."""
    _check_key(pk, c1, c2)
    return Ciphertext(c1.value * c2.value % pk.n_squared, pk.fingerprint)


def scalar_mul(pk: PublicKey, c: Ciphertext, k: int) -> Ciphertext:
    """Ciphertext of k * m mod n, by raising the ciphertext to k >= 0."""
    _check_key(pk, c)
    if k < 0:
        raise DomainError("scalar must be non-negative")
    return Ciphertext(pow(c.value, k, pk.n_squared), pk.fingerprint)


def add_plaintext(pk: PublicKey, c: Ciphertext, m2: int) -> Ciphertext:
    """Ciphertext of m1 + m2 mod n, by multiplying in g^m2."""
    _check_key(pk, c)
    _check_plaintext(pk, m2)
    return Ciphertext(c.value * _pow_g(pk, m2) % pk.n_squared, pk.fingerprint)


def rerandomize(
    pk: PublicKey,
    c: Ciphertext,
    rng: nt.RandomSource | None = None,
    mode: SelfBlindMode = SelfBlindMode.UNIT_POWER,
) -> Ciphertext:
    """Fresh-looking ciphertext of the same plaintext (self-blinding).

    UNIT_POWER multiplies by x^n for a fresh unit x; BASE_POWER multiplies
    by g^(n*r) for a fresh r. Note that with the default base g = n + 1
    the BASE_POWER factor is always 1, so only UNIT_POWER actually changes
    the ciphertext there.
    """
    _check_key(pk, c)
    rng = rng if rng is not None else nt.system_random()
    if mode is SelfBlindMode.UNIT_POWER:
        x = nt.random_unit(pk.n, rng)
        factor = pow(x, pk.n, pk.n_squared)
    else:
        r = rng.randrange(1, pk.n)
        factor = _pow_g(pk, pk.n * r)
    return Ciphertext(c.value * factor % pk.n_squared, pk.fingerprint)

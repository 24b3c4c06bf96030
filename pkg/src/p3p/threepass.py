"""Two three-pass (no-key) protocols as explicit two-role state machines.

The exponentiation variant commutes encryption keys modulo a shared prime.
The homomorphic variant needs keys on one side only: the initiator sends a
ciphertext of its message, the responder raises it to a secret exponent
(scaling the hidden plaintext), the initiator decrypts and returns the
product, and the responder divides its exponent back out. Both run
unauthenticated: an active man-in-the-middle can substitute messages, so
pair them with an authentication layer before trusting the result.

Sessions enforce strict step order because replaying or reordering steps
is the natural misuse; every violation raises instead of desynchronizing.
"""

import enum
from dataclasses import dataclass

from . import numtheory as nt
from .errors import (
    DomainError,
    MalformedMessage,
    PlaintextOutOfRange,
    ProtocolOrderViolation,
)
from .paillier import Ciphertext, PrivateKey, PublicKey, decrypt, encrypt


class InitiatorState(enum.Enum):
    CREATED = "created"
    SENT_M1 = "sent-m1"
    SENT_M3 = "sent-m3"
    DONE = "done"


class ResponderState(enum.Enum):
    CREATED = "created"
    SENT_M2 = "sent-m2"
    DONE = "done"


class PaillierInitiatorSession:
    """Sender role: owns the keypair and the message to deliver."""

    def __init__(self, sk: PrivateKey, message: int):
        if not 0 <= message < sk.public.n:
            raise PlaintextOutOfRange(
                f"message must be in [0, {sk.public.n}), got {message}"
            )
        self.sk = sk
        self.message = message
        self.state = InitiatorState.CREATED

    def _advance(self, expected: InitiatorState, new: InitiatorState) -> None:
        if self.state is not expected:
            raise ProtocolOrderViolation(
                f"initiator is {self.state.value}, step needs {expected.value}"
            )
        self.state = new

    def step1_send(self, rng: nt.RandomSource | None = None) -> int:
        """First pass: a fresh ciphertext of the message."""
        self._advance(InitiatorState.CREATED, InitiatorState.SENT_M1)
        return encrypt(self.sk.public, self.message, rng).value

    def step3_reveal(self, second_pass: int) -> int:
        """Third pass: decrypt the responder's exponent-scaled ciphertext.

        The result is message * m2 mod n, a blinding of the message by the
        responder's secret m2.
        """
        pk = self.sk.public
        if self.state is not InitiatorState.SENT_M1:
            raise ProtocolOrderViolation(
                f"initiator is {self.state.value}, step needs sent-m1"
            )
        if not 0 < second_pass < pk.n_squared or nt.gcd(second_pass, pk.n_squared) != 1:
            raise MalformedMessage("second pass is not a unit modulo n^2")
        self.state = InitiatorState.SENT_M3
        return decrypt(self.sk, Ciphertext(second_pass, pk.fingerprint))

    def mark_done(self) -> None:
        """Record that the third pass was delivered (transport's call)."""
        self._advance(InitiatorState.SENT_M3, InitiatorState.DONE)


class PaillierResponderSession:
    """Receiver role: holds no long-term keys, only a per-run secret.

    In hardened mode (the default) the secret exponent is sampled as
    x^n mod n for a random unit x, so the third pass the initiator later
    reveals is itself a blinded value. Plain mode draws the exponent
    uniformly from the units, matching the unhardened protocol exactly.
    """

    def __init__(self, pk: PublicKey, hardened: bool = True):
        self.pk = pk
        self.hardened = hardened
        self.state = ResponderState.CREATED
        self._m2 = None
        self._m2_inv = None
        self._x = None

    def step2_respond(self, first_pass: int, rng: nt.RandomSource | None = None) -> int:
        """Second pass: raise the initiator's ciphertext to the secret m2."""
        if self.state is not ResponderState.CREATED:
            raise ProtocolOrderViolation(
                f"responder is {self.state.value}, step needs created"
            )
        pk = self.pk
        if not 0 < first_pass < pk.n_squared or nt.gcd(first_pass, pk.n_squared) != 1:
            raise MalformedMessage("first pass is not a unit modulo n^2")
        if self.hardened:
            self._x = nt.random_unit(pk.n, rng)
            self._m2 = pow(self._x, pk.n, pk.n)
        else:
            self._m2 = nt.random_unit(pk.n, rng)
        self._m2_inv = nt.mod_inv(self._m2, pk.n)
        self.state = ResponderState.SENT_M2
        return pow(first_pass, self._m2, pk.n_squared)

    def step4_recover(self, third_pass: int) -> int:
        """Divide the secret back out of the revealed product."""
        if self.state is not ResponderState.SENT_M2:
            raise ProtocolOrderViolation(
                f"responder is {self.state.value}, step needs sent-m2"
            )
        if not 0 <= third_pass < self.pk.n:
            raise MalformedMessage(
                f"third pass must be below n, got {third_pass}"
            )
        recovered = third_pass * self._m2_inv % self.pk.n
        self._x = None  # retained only between steps 2 and 4
        self.state = ResponderState.DONE
        return recovered


@dataclass(frozen=True)
class ShamirParty:
    """Per-conversation exponent pair modulo a shared public prime."""

    prime: int
    e: int  # encryption exponent, coprime to prime - 1
    d: int  # decryption exponent, e^-1 mod prime - 1


@dataclass(frozen=True)
class ShamirTranscript:
    pass1: int
    pass2: int
    pass3: int
    recovered: int


def shamir_keygen(prime: int, rng: nt.RandomSource | None = None) -> ShamirParty:
    """Draw an exponent coprime to prime - 1 and invert it."""
    if prime < 3 or not nt.is_probable_prime(prime, nt.DEFAULT_MR_ROUNDS):
        raise DomainError(f"{prime} is not a usable prime")
    rng = rng if rng is not None else nt.system_random()
    while True:
        e = rng.randrange(1, prime - 1)
        if nt.gcd(e, prime - 1) == 1:
            break
    return ShamirParty(prime=prime, e=e, d=nt.mod_inv(e, prime - 1))


def shamir_exchange(a: ShamirParty, b: ShamirParty, message: int) -> ShamirTranscript:
    """Run the commuting-exponent exchange: a sends, b recovers."""
    if a.prime != b.prime:
        raise DomainError("parties must share the same prime")
    p = a.prime
    if not 1 <= message < p:
        raise DomainError(f"message must be in [1, {p}), got {message}")
    pass1 = pow(message, a.e, p)
    pass2 = pow(pass1, b.e, p)
    pass3 = pow(pass2, a.d, p)
    return ShamirTranscript(
        pass1=pass1, pass2=pass2, pass3=pass3, recovered=pow(pass3, b.d, p)
    )

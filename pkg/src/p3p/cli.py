"""Command-line front end: key management, encryption, signatures, and the
networked three-pass protocol.

Messages on the command line are hex-encoded residues by default; --text
switches to UTF-8 and, where the message must live in Z_n, errors out if
the encoded integer does not fit. Any command that draws randomness is
deterministic under --seed (or the P3P_SEED environment variable).

Exit codes: 0 success, 1 usage, 2 crypto/protocol error.
"""

import argparse
import os
import random
import sys

from . import keyfile, net, numtheory as nt, paillier, signature, threepass, trapdoor
from .errors import P3PError

USAGE_EXIT = 1
ERROR_EXIT = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad arguments; our contract reserves 2 for
    # crypto/protocol failures and uses 1 for usage.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _seed_value(args) -> int | None:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("P3P_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise _UsageError("P3P_SEED must be an integer") from None
    return None


def _seed_rng(args) -> nt.RandomSource | None:
    seed = _seed_value(args)
    return random.Random(seed) if seed is not None else None


def _parse_int_arg(text: str, what: str) -> int:
    try:
        value = int(text, 16)
    except ValueError:
        raise _UsageError(f"{what} must be hexadecimal, got {text!r}") from None
    if value < 0:
        raise _UsageError(f"{what} must be non-negative")
    return value


def _message_arg(args, what: str = "message") -> int:
    raw = getattr(args, what.replace("-", "_"))
    if getattr(args, "text", False):
        data = raw.encode("utf-8")
        return int.from_bytes(data, "big")
    return _parse_int_arg(raw, what)


def _int_out(args, value: int) -> str:
    if getattr(args, "text", False):
        data = value.to_bytes((value.bit_length() + 7) // 8, "big")
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError:
            raise P3PError("recovered bytes are not valid UTF-8") from None
    return format(value, "x")


def _load_key(path: str) -> paillier.PublicKey | paillier.PrivateKey:
    try:
        data = open(path, "rb").read()
    except OSError as exc:
        raise P3PError(f"cannot read {path}: {exc}") from None
    return keyfile.parse_key(data)


def _load_public(path: str) -> paillier.PublicKey:
    key = _load_key(path)
    return key.public if isinstance(key, paillier.PrivateKey) else key


def _load_private(path: str) -> paillier.PrivateKey:
    key = _load_key(path)
    if not isinstance(key, paillier.PrivateKey):
        raise P3PError(f"{path} holds a public key; a private key is needed")
    return key


def _write(path: str, data: bytes, private: bool = False) -> None:
    with open(path, "wb") as fh:
        fh.write(data)
    if private:
        try:
            os.chmod(path, 0o600)
        except OSError:
            pass  # not every platform supports permission bits


def _check_fits(pk: paillier.PublicKey, value: int, what: str) -> None:
    if value >= pk.n:
        raise P3PError(f"{what} does not fit below the modulus")


def _cmd_keygen(args) -> int:
    if args.bits < 8:
        raise _UsageError("--bits must be at least 8 (modulus size)")
    strategy = (
        paillier.BaseStrategy.RANDOM
        if args.base == "random"
        else paillier.BaseStrategy.SAFE_DEFAULT
    )
    sk = paillier.keygen(args.bits // 2, strategy, _seed_rng(args))
    _write(f"{args.out}.pub", keyfile.serialize_key(sk.public))
    _write(f"{args.out}.key", keyfile.serialize_key(sk), private=True)
    print(f"wrote {args.out}.pub and {args.out}.key")
    return 0


def _cmd_encrypt(args) -> int:
    pk = _load_public(args.key)
    m = _message_arg(args)
    if getattr(args, "text", False):
        _check_fits(pk, m, "encoded text")
    print(format(paillier.encrypt(pk, m, _seed_rng(args)).value, "x"))
    return 0


def _cmd_decrypt(args) -> int:
    sk = _load_private(args.key)
    c = paillier.Ciphertext(
        _parse_int_arg(args.ciphertext, "ciphertext"), sk.public.fingerprint
    )
    print(_int_out(args, paillier.decrypt(sk, c)))
    return 0


def _cmd_tp_encrypt(args) -> int:
    pk = _load_public(args.key)
    print(format(trapdoor.tp_encrypt(pk, _parse_int_arg(args.message, "message")).value, "x"))
    return 0


def _cmd_tp_decrypt(args) -> int:
    sk = _load_private(args.key)
    c = paillier.Ciphertext(
        _parse_int_arg(args.ciphertext, "ciphertext"), sk.public.fingerprint
    )
    print(format(trapdoor.tp_decrypt(sk, c), "x"))
    return 0


def _cmd_sign(args) -> int:
    sk = _load_private(args.key)
    if args.text:
        message = args.message.encode("utf-8")
    else:
        hex_text = args.message
        if len(hex_text) % 2:
            hex_text = "0" + hex_text
        try:
            message = bytes.fromhex(hex_text)
        except ValueError:
            raise _UsageError(f"message must be hexadecimal, got {args.message!r}") from None
    sig = signature.sign(sk, message)
    _write(args.out, keyfile.serialize_signature(sig))
    print(f"wrote {args.out}")
    return 0


def _cmd_verify(args) -> int:
    pk = _load_public(args.key)
    if args.text:
        message = args.message.encode("utf-8")
    else:
        hex_text = args.message
        if len(hex_text) % 2:
            hex_text = "0" + hex_text
        try:
            message = bytes.fromhex(hex_text)
        except ValueError:
            raise _UsageError(f"message must be hexadecimal, got {args.message!r}") from None
    try:
        sig = keyfile.parse_signature(open(args.sig, "rb").read())
    except OSError as exc:
        raise P3PError(f"cannot read {args.sig}: {exc}") from None
    if signature.verify_message(pk, message, sig):
        print("valid")
        return 0
    print("invalid")
    return ERROR_EXIT


def _cmd_sign_raw(args) -> int:
    sk = _load_private(args.key)
    sig = signature.sign_raw(sk, _parse_int_arg(args.message, "message"))
    _write(args.out, keyfile.serialize_signature(sig))
    print(f"wrote {args.out}")
    return 0


def _cmd_blind(args) -> int:
    pk = _load_public(args.key)
    blinded, secret = signature.blind(
        pk, _parse_int_arg(args.message, "message"), _seed_rng(args)
    )
    _write(args.secret_out, keyfile.serialize_blinding_secret(secret), private=True)
    print(format(blinded, "x"))
    return 0


def _cmd_unblind(args) -> int:
    pk = _load_public(args.key)
    try:
        sig = keyfile.parse_signature(open(args.sig, "rb").read())
        secret = keyfile.parse_blinding_secret(open(args.secret, "rb").read(), pk.n)
    except OSError as exc:
        raise P3PError(f"cannot read input: {exc}") from None
    _write(args.out, keyfile.serialize_signature(signature.unblind(sig, secret, pk.n)))
    print(f"wrote {args.out}")
    return 0


def _cmd_listen(args) -> int:
    seed = _seed_value(args)

    def rng_factory(index: int):
        return random.Random(seed + index) if seed is not None else None

    def on_listening(port: int) -> None:
        print(f"listening {args.host}:{port}", flush=True)

    def on_outcome(outcome: net.ResponderOutcome) -> None:
        print(f"recovered {_int_out(args, outcome.recovered)}", flush=True)

    net.serve_three_pass(
        port=args.port,
        host=args.host,
        sessions=args.count,
        parallel=args.parallel,
        hardened=not args.plain,
        timeout=args.timeout,
        rng_factory=rng_factory,
        on_listening=on_listening,
        on_outcome=on_outcome,
    )
    return 0


def _cmd_send(args) -> int:
    host, _, port_text = args.addr.rpartition(":")
    if not host:
        raise _UsageError("--addr must look like HOST:PORT")
    try:
        port = int(port_text)
    except ValueError:
        raise _UsageError(f"port must be an integer, got {port_text!r}") from None
    sk = _load_private(args.key)
    m = _message_arg(args)
    if getattr(args, "text", False):
        _check_fits(sk.public, m, "encoded text")
    session = threepass.PaillierInitiatorSession(sk, m)
    outcome = net.send_over_tcp(host, port, session, _seed_rng(args), args.timeout)
    print(f"pass1 {outcome.pass1:x}")
    print(f"pass2 {outcome.pass2:x}")
    print(f"pass3 {outcome.pass3:x}")
    return 0


def _cmd_shamir_demo(args) -> int:
    rng = _seed_rng(args)

    def party(forced_e):
        if forced_e is None:
            return threepass.shamir_keygen(args.prime, rng)
        if nt.gcd(forced_e, args.prime - 1) != 1:
            raise _UsageError(f"exponent {forced_e} shares a factor with p-1")
        return threepass.ShamirParty(
            prime=args.prime, e=forced_e, d=nt.mod_inv(forced_e, args.prime - 1)
        )

    if not nt.is_probable_prime(args.prime, nt.DEFAULT_MR_ROUNDS):
        raise P3PError(f"{args.prime} is not prime")
    transcript = threepass.shamir_exchange(
        party(args.exp_a), party(args.exp_b), args.message
    )
    print(f"pass1 {transcript.pass1}")
    print(f"pass2 {transcript.pass2}")
    print(f"pass3 {transcript.pass3}")
    print(f"recovered {transcript.recovered}")
    return 0


def _add_seed(p) -> None:
    p.add_argument("--seed", type=int, default=None, help="deterministic randomness")


def _add_text(p) -> None:
    p.add_argument("--text", action="store_true", help="treat message as UTF-8 text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="p3p", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a keypair into PREFIX.pub/.key")
    p.add_argument("--bits", type=int, default=2048, help="modulus size (default 2048)")
    p.add_argument("--out", required=True, metavar="PREFIX")
    p.add_argument("--base", choices=["default", "random"], default="default")
    _add_seed(p)
    p.set_defaults(func=_cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a message")
    p.add_argument("--key", required=True)
    p.add_argument("--message", required=True)
    _add_text(p)
    _add_seed(p)
    p.set_defaults(func=_cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext")
    p.add_argument("--key", required=True)
    p.add_argument("--ciphertext", required=True)
    _add_text(p)
    p.set_defaults(func=_cmd_decrypt)

    p = sub.add_parser("tp-encrypt", help="deterministic wide-message encryption")
    p.add_argument("--key", required=True)
    p.add_argument("--message", required=True)
    p.set_defaults(func=_cmd_tp_encrypt)

    p = sub.add_parser("tp-decrypt", help="invert tp-encrypt")
    p.add_argument("--key", required=True)
    p.add_argument("--ciphertext", required=True)
    p.set_defaults(func=_cmd_tp_decrypt)

    p = sub.add_parser("sign", help="hash and sign a message")
    p.add_argument("--key", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--out", required=True)
    _add_text(p)
    p.set_defaults(func=_cmd_sign)

    p = sub.add_parser("verify", help="verify a signature file")
    p.add_argument("--key", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--sig", required=True)
    _add_text(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sign-raw", help="sign a residue without hashing")
    p.add_argument("--key", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sign_raw)

    p = sub.add_parser("blind", help="blind a residue for remote signing")
    p.add_argument("--key", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--secret-out", required=True)
    _add_seed(p)
    p.set_defaults(func=_cmd_blind)

    p = sub.add_parser("unblind", help="turn a blinded signature into a real one")
    p.add_argument("--key", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--secret", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_unblind)

    p = sub.add_parser("3pass-listen", help="run the responder on a TCP port")
    p.add_argument("--port", type=int, required=True, help="0 picks a free port")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--plain", action="store_true", help="disable hardened blinding")
    p.add_argument("--count", type=int, default=1, help="sessions to serve")
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--timeout", type=float, default=net.DEFAULT_TIMEOUT)
    _add_text(p)
    _add_seed(p)
    p.set_defaults(func=_cmd_listen)

    p = sub.add_parser("3pass-send", help="send a message to a listening responder")
    p.add_argument("--addr", required=True, metavar="HOST:PORT")
    p.add_argument("--key", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--timeout", type=float, default=net.DEFAULT_TIMEOUT)
    _add_text(p)
    _add_seed(p)
    p.set_defaults(func=_cmd_send)

    p = sub.add_parser("shamir-demo", help="run the exponentiation variant locally")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--message", type=int, required=True)
    p.add_argument("--exp-a", type=int, default=None, help="force A's exponent")
    p.add_argument("--exp-b", type=int, default=None, help="force B's exponent")
    _add_seed(p)
    p.set_defaults(func=_cmd_shamir_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except P3PError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR_EXIT


if __name__ == "__main__":
    sys.exit(main())

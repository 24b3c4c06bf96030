#!/usr/bin/env python3
"""Rough timings for keygen, encryption, decryption, and signing."""

import argparse
import random
import time

import p3p
from p3p import signature


def timed(label, fn, repeats=1):
    start = time.perf_counter()
    result = None
    for _ in range(repeats):
        result = fn()
    elapsed = (time.perf_counter() - start) / repeats
    print(f"{label:<28} {elapsed * 1000:10.2f} ms")
    return result


def main():
    parser = argparse.ArgumentParser(description=__doc__.strip())
    parser.add_argument(
        "--sizes", type=int, nargs="+", default=[512, 1024, 2048],
        help="modulus sizes in bits",
    )
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    for bits in args.sizes:
        rng = random.Random(args.seed)
        print(f"--- {bits}-bit modulus ---")
        sk = timed(f"keygen", lambda: p3p.keygen(bits // 2, rng=rng))
        pk = sk.public
        m = rng.randrange(pk.n)
        c = timed("encrypt", lambda: p3p.encrypt(pk, m, rng), repeats=5)
        timed("decrypt", lambda: p3p.decrypt(sk, c), repeats=5)
        digest = signature.hash_to_signable(pk, b"benchmark")
        timed("sign_raw", lambda: signature.sign_raw(sk, digest), repeats=5)
        sig = signature.sign_raw(sk, digest)
        timed("verify", lambda: signature.verify(pk, digest, sig), repeats=5)


if __name__ == "__main__":
    main()

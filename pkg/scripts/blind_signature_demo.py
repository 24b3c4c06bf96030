#!/usr/bin/env python3
"""Blind-signature walkthrough: blind, sign remotely, unblind, verify.

Also prints the one leak this construction has: the signer sees the same
s1 for the blinded message as for the original.
"""

import argparse
import random

import p3p
from p3p import signature


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--bits", type=int, default=256, help="modulus size")
    parser.add_argument("--seed", type=int, default=None)
    args = parser.parse_args()

    rng = random.Random(args.seed) if args.seed is not None else None
    sk = p3p.keygen(args.bits // 2, rng=rng)
    pk = sk.public

    message = signature.hash_to_signable(pk, b"pay the bearer one coin")
    print(f"message residue   = {message:#x}")

    blinded, secret = signature.blind(pk, message, rng)
    print(f"blinded residue   = {blinded:#x}")

    blinded_sig = signature.sign_raw(sk, blinded)  # the signer's side
    unblinded = signature.unblind(blinded_sig, secret, pk.n)
    print(f"signature s1      = {unblinded.s1:#x}")
    print(f"signature s2      = {unblinded.s2:#x}")
    print(f"verifies          = {signature.verify(pk, message, unblinded)}")

    direct = signature.sign_raw(sk, message)
    print(f"equals direct sig = {unblinded == direct}")
    print(f"signer saw s1     = {blinded_sig.s1 == direct.s1} (class leaks)")


if __name__ == "__main__":
    main()

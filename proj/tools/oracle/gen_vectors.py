#!/usr/bin/env python3
"""Generate the frozen test-vector files from implementations that share no
code with the C++ library (pycryptodome for AES/Keccak/PBKDF2, coincurve
which wraps libsecp256k1 for the curve work, hashlib as a second PBKDF2 route).

Run once; the outputs under tests/vectors/ are committed and read-only for
the test suite.

    python3 tools/oracle/gen_vectors.py tests/vectors
"""
import hashlib
import json
import pathlib
import sys

from Crypto.Cipher import AES
from Crypto.Hash import HMAC, SHA256, keccak
from Crypto.Protocol.KDF import PBKDF2
from Crypto.Util.Padding import pad
import coincurve

SHARE_CONSTANT = b"American Psycho"
HARDENED_CONTEXT = b"cfslab/hardened-share-auth/v1:"


def keccak256(data: bytes) -> bytes:
    h = keccak.new(digest_bits=256)
    h.update(data)
    return h.digest()


def share_vector(password: str, context: bytes = b"", timestamp: int = 1700000000):
    # password first, constant second; inner digest fed to the outer hash as raw bytes
    scalar = keccak256(keccak256(context + password.encode("utf-8") + SHARE_CONSTANT))
    key = coincurve.PrivateKey(scalar)
    pub = key.public_key.format(compressed=False)[1:]  # x || y, prefix byte dropped
    address = keccak256(pub)[-20:]
    digest = keccak256(str(timestamp).encode("ascii"))
    sig = key.sign_recoverable(digest, hasher=None)  # r || s || recid, low-s
    return {
        "password": password,
        "private_scalar_hex": scalar.hex(),
        "address_hex": address.hex(),
        "public_hex": pub.hex(),
        "timestamp": timestamp,
        "signature_hex": sig.hex(),
    }


def kdf_vector(password: str, salt: bytes, iterations: int, dklen: int):
    a = PBKDF2(password.encode(), salt, dkLen=dklen, count=iterations,
               prf=lambda p, s: HMAC.new(p, s, SHA256).digest())
    b = hashlib.pbkdf2_hmac("sha256", password.encode(), salt, iterations, dklen)
    assert a == b, "PBKDF2 oracles disagree"
    return {"password": password, "salt_hex": salt.hex(), "iterations": iterations, "key_hex": a.hex()}


PUBLISHED_KDF = [
    # widely published PBKDF2-HMAC-SHA256 vectors (RFC 6070 inputs, SHA-256 PRF; RFC 7914 section 11)
    ("password", b"salt", 1, "120fb6cffcf8b32c43e7225256c4f837a86548c92ccc35480805987cb70be17b"),
    ("password", b"salt", 2, "ae4d0c95af6b46d32d0adff928f06dd02a303f8ef3c251dfd6e2d85a95474c43"),
    ("password", b"salt", 4096, "c5e478d59288c841aa530db6845c4c8d962893a001ce4e11a4963873aa98134a"),
    ("passwd", b"salt", 1,
     "55ac046e56e3089fec1691c22544b605f94185216dde0465e68b9d57c20dacbc"
     "49ca9cccf179b645991664b39d77ef317c71b845b1e30bd509112041d3a19783"),
]


def legacy_vector(password: str, plaintext: bytes):
    key = password.encode("utf-8").ljust(32, b"\0")
    ct = AES.new(key, AES.MODE_CBC, iv=bytes(16)).encrypt(pad(plaintext, 16))
    return {
        "password": password,
        "key_hex": key.hex(),
        "plaintext_hex": plaintext.hex(),
        "ciphertext_hex": ct.hex(),
        "sha256_hex": hashlib.sha256(ct).hexdigest(),
    }


def main(out_dir: pathlib.Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)

    share_passwords = [
        "hunter2!", "!!!!!!", "abc!ef", "correct horse battery staple!",
        "a", "P@ssw0rd", "z!", "share-me#2025", "pässwörd!", "^^^^^^^^",
        "0123456789abcdef0123456789abcd!!", "Tr0ub4dor&3",
    ]
    share = [share_vector(p) for p in share_passwords]
    addresses = {v["address_hex"] for v in share}
    assert len(addresses) == len(share)
    with open(out_dir / "share_vectors.jsonl", "w") as f:
        f.write(json.dumps({"_comment": "share key = keccak256(keccak256(utf8(password) || utf8('American Psycho'))); "
                            "inner digest as raw bytes; address = last 20 bytes of keccak256(x||y); "
                            "signature = ECDSA r||s||recid over keccak256(decimal timestamp), RFC 6979 nonce, low-s",
                            "order": "password-first", "inner_digest": "raw"}) + "\n")
        for v in share:
            f.write(json.dumps(v, ensure_ascii=False) + "\n")

    hardened = [share_vector(p, HARDENED_CONTEXT) for p in ["kT9#mQ2!vL8@xR", "hunter2!", "!!!!!!"]]
    with open(out_dir / "hardened_share_vectors.jsonl", "w") as f:
        for v in hardened:
            f.write(json.dumps(v, ensure_ascii=False) + "\n")

    kdf = []
    for pw, salt, it, expect in PUBLISHED_KDF:
        v = kdf_vector(pw, salt, it, len(expect) // 2)
        assert v["key_hex"] == expect, (pw, it)
        kdf.append(v)
    kdf.append(kdf_vector("correct horse battery staple", bytes(range(16)), 100000, 32))
    kdf.append(kdf_vector("kT9#mQ2!vL8@xR", bytes.fromhex("f0e1d2c3b4a5968778695a4b3c2d1e0f"), 100000, 32))
    kdf.append(kdf_vector("!!!!!!!!!!!!", b"\x00" * 16, 600000, 32))
    with open(out_dir / "kdf_vectors.jsonl", "w") as f:
        for v in kdf:
            f.write(json.dumps(v) + "\n")

    legacy = [
        legacy_vector("", b""),
        legacy_vector("!!!!!!", b""),
        legacy_vector("!!!!!!", b"hello, world\n"),
        legacy_vector("abc!ef", b"0123456789abcdef"),
        legacy_vector("abc!ef", bytes(range(48))),
        legacy_vector("0123456789abcdef0123456789abcd!!", b"The quick brown fox jumps over the lazy dog"),
    ]
    with open(out_dir / "legacy_vectors.jsonl", "w") as f:
        for v in legacy:
            f.write(json.dumps(v) + "\n")

    digests = [{"input_hex": d.hex(), "sha256_hex": hashlib.sha256(d).hexdigest(), "keccak256_hex": keccak256(d).hex()}
               for d in [b"", b"abc", b"a" * 200, bytes(range(256))]]
    with open(out_dir / "digest_vectors.jsonl", "w") as f:
        for v in digests:
            f.write(json.dumps(v) + "\n")


if __name__ == "__main__":
    main(pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "tests/vectors"))

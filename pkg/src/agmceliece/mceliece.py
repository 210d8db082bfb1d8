"""McEliece over duals of one-point AG codes.

The published key is S * G_can * P: a secretly scrambled, optionally
column-permuted generator matrix of C_L(m*Pinf)^perp, together with the
error budget t = floor((d* - g - 1)/2), d* = m - 2g + 2.  The legitimate
receiver decodes with the error-correcting pair A = C_L((t+g)Pinf),
B = C_L((m-t-g)Pinf).
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

import numpy as np

from .code import LinearCode
from .curve import OnePointCurve, ag_code, curve_from_descriptor
from .ecp import EcpPair, ecp_decode
from .errors import DimensionError, ParameterError
from .field import Field
from . import matrix as mx


def derive_seed(master: int, tag: str) -> int:
    h = hashlib.sha256(f"{master}:{tag}".encode()).digest()
    return int.from_bytes(h[:8], "big")


def scheme_t(m: int, g: int) -> int:
    """Error budget: t = floor((d* - g - 1) / 2) with d* = m - 2g + 2."""
    return (m - 3 * g + 1) // 2


@dataclass
class PublicKey:
    field: Field
    n: int
    t: int
    g_pub: np.ndarray  # k x n, scrambled (not canonical)

    @property
    def k(self) -> int:
        return self.g_pub.shape[0]

    def code(self) -> LinearCode:
        return LinearCode(self.field, self.n, self.g_pub)

    def to_dict(self) -> dict:
        return {
            "field": self.field.to_dict(),
            "n": self.n,
            "t": self.t,
            "g_pub": [[int(x) for x in row] for row in self.g_pub],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PublicKey":
        field = Field.from_dict(d["field"])
        g = np.array(d["g_pub"], dtype=np.int64)
        return cls(field, int(d["n"]), int(d["t"]), g)


@dataclass
class SecretKey:
    curve_descriptor: dict
    m: int
    scramble: np.ndarray       # k x k invertible
    permutation: list[int]     # image positions: column j of G_can lands at permutation[j]
    seed: int

    _curve_cache: OnePointCurve | None = None

    @property
    def curve(self) -> OnePointCurve:
        if self._curve_cache is None:
            self._curve_cache = curve_from_descriptor(self.curve_descriptor)
        return self._curve_cache

    def to_dict(self) -> dict:
        return {
            "curve": self.curve_descriptor,
            "m": self.m,
            "scramble": [[int(x) for x in row] for row in self.scramble],
            "permutation": list(self.permutation),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SecretKey":
        return cls(
            d["curve"],
            int(d["m"]),
            np.array(d["scramble"], dtype=np.int64),
            [int(i) for i in d["permutation"]],
            int(d["seed"]),
        )


@dataclass
class Ciphertext:
    y: np.ndarray

    def to_dict(self) -> dict:
        return {"y": [int(v) for v in self.y]}

    @classmethod
    def from_dict(cls, d: dict) -> "Ciphertext":
        return cls(np.array(d["y"], dtype=np.int64))


def _random_invertible(field: Field, k: int, rng: random.Random) -> np.ndarray:
    while True:
        S = np.array(
            [[field.random_rep(rng) for _ in range(k)] for _ in range(k)], dtype=np.int64
        )
        if mx.rref(field, S)[1] == k:
            return S


def _permute_columns(a: np.ndarray, perm: list[int]) -> np.ndarray:
    out = np.empty_like(a)
    out[:, perm] = a
    return out


def keygen(
    curve: OnePointCurve, m: int, seed: int, permute: bool = True
) -> tuple[PublicKey, SecretKey]:
    """Generate a key pair; the caller picks m, keygen enforces scheme validity."""
    g, n = curve.genus, curve.n
    if not n > m > 3 * g - 1:
        raise ParameterError(f"need n > m > 3g-1, got n={n}, m={m}, g={g}")
    t = scheme_t(m, g)
    if t < 1:
        raise ParameterError(f"m={m} gives error budget t={t}; scheme needs t >= 1")
    c_pub = ag_code(curve, m).dual()
    k = c_pub.k
    rng_s = random.Random(derive_seed(seed, "scramble"))
    S = _random_invertible(curve.field, k, rng_s)
    if permute:
        rng_p = random.Random(derive_seed(seed, "permute"))
        perm = list(range(n))
        rng_p.shuffle(perm)
    else:
        perm = list(range(n))
    g_pub = _permute_columns(curve.field.matmul(S, c_pub.gen), perm)
    pk = PublicKey(curve.field, n, t, g_pub)
    sk = SecretKey(curve.descriptor(), m, S, perm, seed)
    return pk, sk


def random_error(field: Field, n: int, weight: int, rng: random.Random) -> np.ndarray:
    e = np.zeros(n, dtype=np.int64)
    for pos in rng.sample(range(n), weight):
        e[pos] = field.random_nonzero_rep(rng)
    return e


def encrypt(pk: PublicKey, msg, seed: int, weight: int | None = None) -> Ciphertext:
    """y = msg * G_pub + e, with e of weight exactly t unless overridden."""
    msg = np.asarray(msg, dtype=np.int64).reshape(-1)
    if msg.size != pk.k:
        raise DimensionError(f"message length {msg.size} != k = {pk.k}")
    weight = pk.t if weight is None else weight
    if not 0 <= weight <= pk.t:
        raise ParameterError(f"error weight {weight} outside [0, t={pk.t}]")
    rng = random.Random(derive_seed(seed, "error"))
    e = random_error(pk.field, pk.n, weight, rng)
    y = pk.field.add(pk.field.matmul(msg[None, :], pk.g_pub).ravel(), e)
    return Ciphertext(y)


def legitimate_pair(sk: SecretKey) -> EcpPair:
    """The receiver's pair A = C_L((t+g)Pinf), B = C_L((m-t-g)Pinf), permuted."""
    curve = sk.curve
    g = curve.genus
    t = scheme_t(sk.m, g)
    deg_e = t + g
    if not sk.m > deg_e:
        raise ParameterError(f"need m > t+g, got m={sk.m}, t+g={deg_e}")
    perm = sk.permutation
    A = LinearCode(curve.field, curve.n, _permute_columns(ag_code(curve, deg_e).gen, perm))
    B = LinearCode(
        curve.field, curve.n, _permute_columns(ag_code(curve, sk.m - deg_e).gen, perm)
    )
    C = LinearCode(
        curve.field, curve.n, _permute_columns(ag_code(curve, sk.m).dual().gen, perm)
    )
    return EcpPair(A, B, C, t)


def decrypt(sk: SecretKey, ct: Ciphertext) -> np.ndarray:
    """Recover the message; decode failures propagate."""
    pair = legitimate_pair(sk)
    c, _e = ecp_decode(pair, ct.y)
    g_pub = _permute_columns(
        sk.curve.field.matmul(sk.scramble, ag_code(sk.curve, sk.m).dual().gen),
        sk.permutation,
    )
    msg = mx.solve(sk.curve.field, g_pub.T, c)
    if msg is None:
        raise DimensionError("decoded word is outside the public row space")
    return msg


def designed_bounds(m: int, g: int, n: int) -> tuple[int, int, int]:
    """Designed lower bounds (d_A, d_Bdual, d_C) for the legitimate pair."""
    t = scheme_t(m, g)
    return (n - (t + g), (m - t - g) - 2 * g + 2, m - 2 * g + 2)

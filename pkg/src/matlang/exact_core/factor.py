"""Coprime (gcd-free) bases for rational polynomials and integers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Sequence, Tuple

from .poly import UniPoly, uni_gcd


@dataclass(frozen=True)
class Factorization:
    """``inputs[k] = units[k] * prod(base[i] ** exponents[k][i])``."""

    base: Tuple[UniPoly, ...]
    exponents: Tuple[Tuple[int, ...], ...]
    units: Tuple[Fraction, ...]

    def reconstruct(self, k: int) -> UniPoly:
        out = UniPoly.const(self.units[k])
        for b, e in zip(self.base, self.exponents[k]):
            out = out * b ** e
        return out


def _refine(polys: List[UniPoly]) -> List[UniPoly]:
    """Pairwise-coprime monic nonconstant set generating the same factors."""
    work = [p.monic() for p in polys if p.degree > 0]
    done: List[UniPoly] = []
    while work:
        a = work.pop()
        changed = False
        for idx, b in enumerate(done):
            g = uni_gcd(a, b)
            if g.degree == 0:
                continue
            del done[idx]
            for piece in (g, a.exact_div(g), b.exact_div(g)):
                if piece.degree > 0:
                    work.append(piece.monic())
            changed = True
            break
        if not changed and all(a != d for d in done):
            done.append(a)
    done.sort(key=lambda p: p.sort_key())
    return done


def coprime_basis(polys: Sequence[UniPoly]) -> Factorization:
    """Shared gcd-free base for nonzero inputs with exact exponent vectors."""
    for p in polys:
        if p.is_zero():
            raise ValueError("coprime_basis input must be nonzero")
    seeds: List[UniPoly] = []
    for p in polys:
        seeds.extend(p.squarefree_decomposition())
    base = _refine(seeds)
    exps = []
    units = []
    for p in polys:
        rest = p
        vec = []
        for b in base:
            e = 0
            while rest.degree >= b.degree:
                q, r = divmod(rest, b)
                if not r.is_zero():
                    break
                rest, e = q, e + 1
            vec.append(e)
        if rest.degree != 0:
            raise AssertionError("coprime_basis: reconstruction failed")
        exps.append(tuple(vec))
        units.append(rest.lc)
    return Factorization(tuple(base), tuple(exps), tuple(units))


def int_coprime_basis(values: Sequence[int]) -> Tuple[List[int], List[Dict[int, int]]]:
    """Gcd-free basis of positive integers and each input's exponent map."""
    work = [v for v in values if v > 1]
    done: List[int] = []
    while work:
        a = work.pop()
        for idx, b in enumerate(done):
            g = gcd(a, b)
            if g == 1:
                continue
            if a == b:
                break
            del done[idx]
            work.extend(x for x in (g, a // g, b // g) if x > 1)
            break
        else:
            done.append(a)
    done.sort()
    maps = []
    for v in values:
        m: Dict[int, int] = {}
        for b in done:
            e = 0
            while v > 1 and v % b == 0:
                v //= b
                e += 1
            if e:
                m[b] = e
        if v != 1:
            raise AssertionError("int_coprime_basis: reconstruction failed")
        maps.append(m)
    return done, maps

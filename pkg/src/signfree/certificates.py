"""Checking collapse certificates for presentations of proto-ordered rings.

A presentation lists generators and three sets of polynomials declared
``> 0``, ``>= 0`` and ``= 0``. A collapse certificate is an identity
``s + p + z = 0`` where ``s`` is a product of strictly positive members,
``p`` a positive combination of squares times products of nonnegative (or
positive) members, and ``z`` an ideal combination of the null members.
Such an identity shows that the presentation is contradictory.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import json

from .mpoly import MPoly, format_mpoly
from .rational import format_rational, parse_rational
from .terms import has_lattice, parse_term, to_mpoly


class MalformedCertificate(ValueError):
    """The certificate cites an index outside the declared sets, or a non-positive coefficient."""


def _poly(p):
    if isinstance(p, MPoly):
        return p
    if isinstance(p, (int, Fraction)):
        return MPoly.const(p)
    t = parse_term(p)
    if has_lattice(t):
        raise ValueError(f"{p!r} is not a polynomial")
    return to_mpoly(t)


@dataclass(frozen=True)
class RingPresentation:
    generators: tuple
    gt0: tuple = ()
    geq0: tuple = ()
    eq0: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for name in ("gt0", "geq0", "eq0"):
            polys = tuple(_poly(p) for p in getattr(self, name))
            for p in polys:
                extra = set(p.variables()) - set(self.generators)
                if extra:
                    raise ValueError(f"undeclared generators {sorted(extra)} in {format_mpoly(p)}")
            object.__setattr__(self, name, polys)

    @property
    def nonnegative(self):
        """Members usable as cone generators: strict ones first, then the rest."""
        return self.gt0 + self.geq0

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            tuple(data.get("generators", ())),
            tuple(data.get("gt0", ())),
            tuple(data.get("geq0", ())),
            tuple(data.get("eq0", ())),
        )

    def to_json(self):
        return {
            "generators": list(self.generators),
            "gt0": [format_mpoly(p) for p in self.gt0],
            "geq0": [format_mpoly(p) for p in self.geq0],
            "eq0": [format_mpoly(p) for p in self.eq0],
        }


@dataclass(frozen=True)
class ConeTerm:
    coeff: Fraction
    square: MPoly  # the polynomial that gets squared
    gens: tuple = ()  # indices into gt0 ++ geq0, with repetition


@dataclass(frozen=True)
class IdealTerm:
    mult: MPoly
    idx: int  # index into eq0


@dataclass(frozen=True)
class CollapseCertificate:
    s: tuple = ()  # indices into gt0, with repetition; empty means 1
    p: tuple = ()
    z: tuple = ()

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        cone = tuple(
            ConeTerm(parse_rational(str(item["coeff"])), _poly(item["square"]), tuple(item.get("gens", ())))
            for item in data.get("p", ())
        )
        ideal = tuple(IdealTerm(_poly(item["mult"]), int(item["idx"])) for item in data.get("z", ()))
        return cls(tuple(data.get("s", ())), cone, ideal)

    def to_json(self):
        return {
            "s": list(self.s),
            "p": [
                {"coeff": format_rational(t.coeff), "square": format_mpoly(t.square), "gens": list(t.gens)}
                for t in self.p
            ],
            "z": [{"mult": format_mpoly(t.mult), "idx": t.idx} for t in self.z],
        }


@dataclass(frozen=True)
class Accepted:
    def to_json(self):
        return {"result": "Accepted"}


@dataclass(frozen=True)
class Rejected:
    residual: MPoly = field(default_factory=MPoly)

    def to_json(self):
        return {"result": "Rejected", "residual": format_mpoly(self.residual)}


def _cite(pool, idx, what):
    if not isinstance(idx, int) or isinstance(idx, bool) or not 0 <= idx < len(pool):
        raise MalformedCertificate(f"{what} index {idx!r} is not among the {len(pool)} declared members")
    return pool[idx]


def certificate_sum(presentation, cert):
    """The polynomial s + p + z described by the certificate."""
    s = MPoly.const(1)
    for i in cert.s:
        s = s * _cite(presentation.gt0, i, "gt0")
    p = MPoly()
    cone = presentation.nonnegative
    for term in cert.p:
        if term.coeff <= 0:
            raise MalformedCertificate(f"cone coefficient {term.coeff} is not positive")
        piece = term.square * term.square * term.coeff
        for i in term.gens:
            piece = piece * _cite(cone, i, "gt0 ++ geq0")
        p = p + piece
    z = MPoly()
    for term in cert.z:
        z = z + term.mult * _cite(presentation.eq0, term.idx, "eq0")
    for q in [t.square for t in cert.p] + [t.mult for t in cert.z]:
        extra = set(q.variables()) - set(presentation.generators)
        if extra:
            raise MalformedCertificate(f"undeclared generators {sorted(extra)}")
    return s + p + z


def check_collapse_certificate(presentation, cert):
    """Accepted iff s + p + z expands to the zero polynomial."""
    residual = certificate_sum(presentation, cert)
    return Accepted() if residual.is_zero() else Rejected(residual)

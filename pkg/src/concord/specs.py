"""Structured knot and link descriptions: the toolkit's ingestion model.

A KnotSpec names a knot and says how it is built: a family constructor
(twist, torus, the genus-one doubled-band shape, the genus-two
two-block shape, connected sums), an explicit Seifert matrix with
optional band-core declarations, or an abstract knot known only by
name.  Declared facts carry provenance strings and feed the signature
calculus; infection sites describe satellite operations along curves
in the commutator subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import seifert as sf
from .seifert import SeifertMatrix

F = Fraction


class SchemaError(ValueError):
    """Malformed knot/link document."""


# ---------------------------------------------------------------------------
# Facts and infection sites
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Fact:
    """A declared input with provenance, e.g. a known vanishing rho-value
    or the existence of slice disks behind the band Lagrangians."""

    kind: str              # sigvalue | siginterval | sigsign | slice_lagrangians
    atom: str = ""
    value: str = ""        # rational string, or sign tag for sigsign
    lo: str | None = None
    hi: str | None = None
    provenance: str = ""


@dataclass(frozen=True)
class Site:
    """Infection site: a curve in the commutator subgroup with its
    infecting knot.  The curve is given in module coordinates, as a band
    meridian index, or tagged second-derived (contributes nothing to
    metabelian evaluations)."""

    infect: "KnotSpec"
    eta_module: tuple = ()         # tuple of Fraction coordinates
    band_meridian: int | None = None
    second_derived: bool = False


# ---------------------------------------------------------------------------
# Family constructors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Twist:
    tw: int
    cores: tuple = ()       # optionally two KnotSpecs tied into the bands
    base_name: str = ""     # name of the uninfected base knot


@dataclass(frozen=True)
class Torus:
    p: int
    q: int


@dataclass(frozen=True)
class GenusOne:
    """Doubled-band genus-one shape [[0, l], [l+1, tw]] with the two band
    cores tied into the components of a string link."""

    l: int
    tw: int
    cores: tuple = ()          # two KnotSpecs (string-link component types)
    string_link: str = "generic"   # generic | split
    base_name: str = ""


@dataclass(frozen=True)
class GenusTwoFig9:
    """Two genus-one blocks (twists l1, l2, both untwisted second bands)
    with declared core data L, LL and the doubling arc B."""

    l1: int
    l2: int
    L: tuple = ()    # (L1, L2)
    LL: tuple = ()   # (LL1, LL2)
    B: "KnotSpec | None" = None


@dataclass(frozen=True)
class ConnectedSum:
    parts: tuple = ()  # KnotSpecs


@dataclass(frozen=True)
class Explicit:
    matrix: SeifertMatrix
    band_cores: tuple = ()  # KnotSpecs on the a-bands (even indices)
    base_name: str = ""


@dataclass(frozen=True)
class Abstract:
    """A knot known only by name; its rho0 stays a symbol."""


@dataclass(frozen=True)
class Unknot:
    pass


@dataclass(frozen=True)
class KnotSpec:
    name: str
    family: object
    facts: tuple = ()
    sites: tuple = ()   # explicit infection sites beyond family cores

    def __post_init__(self):
        if not self.name:
            raise SchemaError("knot spec needs a name")


@dataclass(frozen=True)
class LinkInfection:
    infect: KnotSpec
    nontrivial: bool = True   # image of the curve under the abelian map


@dataclass(frozen=True)
class LinkSpec:
    """An ordered link with trivial linking numbers plus declared class
    tags: split, boundary, the clasped two-component pattern, or an
    infected trivial link with per-site data."""

    name: str
    components: tuple = ()           # KnotSpecs (component knot types)
    structure: str = "declared"      # split|boundary|clasp_fig12|infected_trivial|declared
    infections: tuple = ()           # LinkInfections (infected_trivial data)
    declared_nullity: int | None = None
    declared_rho0: tuple = ()        # ((atom_name, coeff_string), ...)
    facts: tuple = ()

    @property
    def component_count(self):
        return len(self.components)


# ---------------------------------------------------------------------------
# Seifert matrices of family knots
# ---------------------------------------------------------------------------

def seifert_matrix(spec: KnotSpec) -> SeifertMatrix | None:
    """Seifert matrix of the spec, or None for abstract knots.

    Band infections (cores, sites) never change the matrix: infection
    happens along curves in the commutator subgroup.
    """
    fam = spec.family
    if isinstance(fam, Twist):
        return sf.twist_knot(fam.tw)
    if isinstance(fam, Torus):
        return sf.torus_knot(fam.p, fam.q)
    if isinstance(fam, GenusOne):
        return sf.genus_one(fam.l, fam.tw)
    if isinstance(fam, GenusTwoFig9):
        return sf.connected_sum(sf.genus_one(fam.l1, 0), sf.genus_one(fam.l2, 0))
    if isinstance(fam, ConnectedSum):
        acc = sf.unknot()
        for part in fam.parts:
            m = seifert_matrix(part)
            if m is None:
                return None
            acc = sf.connected_sum(acc, m)
        return acc
    if isinstance(fam, Explicit):
        return fam.matrix
    if isinstance(fam, Unknot):
        return sf.unknot()
    if isinstance(fam, Abstract):
        return None
    raise SchemaError(f"unknown family {type(fam).__name__}")


def band_cores(spec: KnotSpec) -> tuple:
    """Declared band-core knots, aligned with band index (or empty)."""
    fam = spec.family
    if isinstance(fam, (Twist, GenusOne)):
        return tuple(fam.cores)
    if isinstance(fam, Explicit):
        return tuple(fam.band_cores)
    return ()


def iter_specs(spec: KnotSpec):
    """The spec and every knot nested in its family tree and sites."""
    yield spec
    fam = spec.family
    for child in getattr(fam, "cores", ()) or ():
        yield from iter_specs(child)
    for attr in ("L", "LL", "parts", "band_cores"):
        for child in getattr(fam, attr, ()) or ():
            yield from iter_specs(child)
    if getattr(fam, "B", None) is not None:
        yield from iter_specs(fam.B)
    for site in spec.sites:
        yield from iter_specs(site.infect)


def abstract_knot(name: str, *facts) -> KnotSpec:
    return KnotSpec(name, Abstract(), tuple(facts))


def unknot_spec(name: str = "U") -> KnotSpec:
    return KnotSpec(name, Unknot())


# ---------------------------------------------------------------------------
# JSON document parsing
# ---------------------------------------------------------------------------

def _require(doc, key, context):
    if key not in doc:
        raise SchemaError(f"{context}: missing field {key!r}")
    return doc[key]


def parse_fact(doc) -> Fact:
    kind = _require(doc, "kind", "fact")
    if kind not in ("sigvalue", "siginterval", "sigsign", "slice_lagrangians"):
        raise SchemaError(f"fact: unknown kind {kind!r}")
    return Fact(kind=kind,
                atom=doc.get("atom", ""),
                value=str(doc.get("value", "")),
                lo=None if doc.get("lo") is None else str(doc["lo"]),
                hi=None if doc.get("hi") is None else str(doc["hi"]),
                provenance=doc.get("provenance", ""))


def parse_site(doc, context) -> Site:
    infect = parse_knot(_require(doc, "infect", f"{context}.site"))
    if doc.get("second_derived"):
        return Site(infect=infect, second_derived=True)
    if "band_meridian" in doc:
        return Site(infect=infect, band_meridian=int(doc["band_meridian"]))
    if "eta_module" in doc:
        return Site(infect=infect,
                    eta_module=tuple(F(str(c)) for c in doc["eta_module"]))
    raise SchemaError(f"{context}: site needs eta_module, band_meridian "
                      "or second_derived")


def parse_knot(doc) -> KnotSpec:
    if isinstance(doc, str):
        return abstract_knot(doc)
    if not isinstance(doc, dict):
        raise SchemaError(f"knot spec must be an object or name, got {doc!r}")
    name = _require(doc, "name", "knot")
    fam_doc = _require(doc, "family", f"knot {name}")
    ftype = _require(fam_doc, "type", f"knot {name}.family")
    ctx = f"knot {name}"

    def sub(key, required=False):
        if key not in fam_doc:
            if required:
                raise SchemaError(f"{ctx}: family needs {key!r}")
            return ()
        return tuple(parse_knot(d) for d in fam_doc[key])

    if ftype == "twist":
        fam = Twist(int(_require(fam_doc, "tw", ctx)), sub("cores"),
                    fam_doc.get("base_name", ""))
    elif ftype == "torus":
        fam = Torus(int(_require(fam_doc, "p", ctx)),
                    int(_require(fam_doc, "q", ctx)))
    elif ftype == "genus_one":
        fam = GenusOne(int(_require(fam_doc, "l", ctx)),
                       int(_require(fam_doc, "tw", ctx)),
                       sub("cores"),
                       fam_doc.get("string_link", "generic"),
                       fam_doc.get("base_name", ""))
    elif ftype == "genus_two_fig9":
        b = fam_doc.get("B")
        fam = GenusTwoFig9(int(_require(fam_doc, "l1", ctx)),
                           int(_require(fam_doc, "l2", ctx)),
                           sub("L", required=True),
                           sub("LL", required=True),
                           parse_knot(b) if b is not None else None)
    elif ftype == "connected_sum":
        fam = ConnectedSum(sub("parts", required=True))
    elif ftype == "explicit":
        rows = _require(fam_doc, "matrix", ctx)
        try:
            mat = SeifertMatrix.from_rows(rows)
        except ValueError as exc:
            raise SchemaError(f"{ctx}: {exc}") from exc
        fam = Explicit(mat, sub("band_cores"), fam_doc.get("base_name", ""))
    elif ftype == "abstract":
        fam = Abstract()
    elif ftype == "unknot":
        fam = Unknot()
    else:
        raise SchemaError(f"{ctx}: unknown family type {ftype!r}")
    facts = tuple(parse_fact(f) for f in doc.get("facts", ()))
    sites = tuple(parse_site(s, ctx) for s in doc.get("sites", ()))
    return KnotSpec(name, fam, facts, sites)


def parse_link(doc) -> LinkSpec:
    name = _require(doc, "name", "link")
    structure = doc.get("structure", "declared")
    if structure not in ("split", "boundary", "clasp_fig12",
                         "infected_trivial", "declared"):
        raise SchemaError(f"link {name}: unknown structure {structure!r}")
    comps = tuple(parse_knot(d) for d in doc.get("components", ()))
    infections = tuple(
        LinkInfection(parse_knot(_require(i, "infect", f"link {name}")),
                      bool(i.get("nontrivial", True)))
        for i in doc.get("infections", ()))
    nullity = doc.get("declared_nullity")
    rho0 = tuple((str(a), str(c)) for a, c in doc.get("declared_rho0", ()))
    facts = tuple(parse_fact(f) for f in doc.get("facts", ()))
    return LinkSpec(name, comps, structure, infections,
                    None if nullity is None else int(nullity), rho0, facts)


def parse_document(doc):
    """Top-level dispatch: a document is a knot unless marked as a link."""
    if isinstance(doc, dict) and (doc.get("link") or "components" in doc):
        return parse_link(doc)
    return parse_knot(doc)

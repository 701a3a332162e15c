"""Group constructors: standard families, GL_n(2) and its inverse-transpose
extension, flag stabilizers, direct products, and the ``permgroup v1``
file format.

Vectors of F_2^n are numbered by their binary value (bit i is coordinate
i), so the nonzero vectors are points 1..2^n-1.  Matrices act on column
vectors, v -> Mv, and a matrix is stored as a list of row bitmasks.  With
this convention block upper-triangular matrices stabilize the spans of
leading coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, prod

from .errors import InputError
from .group import PermutationGroup
from .perm import Permutation, format_cycles, is_identity, parse_cycles, pconj, pmul

# ---------------------------------------------------------------------------
# F_2 linear algebra on row bitmasks


def _apply(rows: list[int], v: int) -> int:
    """Column action: bit i of Mv is the parity of row_i & v."""
    out = 0
    for i, r in enumerate(rows):
        if bin(r & v).count("1") & 1:
            out |= 1 << i
    return out


def _identity_rows(n: int) -> list[int]:
    return [1 << i for i in range(n)]


def _transpose(rows: list[int], n: int) -> list[int]:
    return [sum(((rows[i] >> j) & 1) << i for i in range(n)) for j in range(n)]


def _inverse(rows: list[int], n: int) -> list[int]:
    a = list(rows)
    inv = _identity_rows(n)
    for col in range(n):
        piv = next((r for r in range(col, n) if (a[r] >> col) & 1), None)
        if piv is None:
            raise InputError("singular matrix over F_2")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        for r in range(n):
            if r != col and (a[r] >> col) & 1:
                a[r] ^= a[col]
                inv[r] ^= inv[col]
    return inv


def matrix_to_tuple(rows: list[int], n: int) -> tuple:
    """Permutation (0-based) induced on the 2^n - 1 nonzero vectors."""
    return tuple(_apply(rows, v) - 1 for v in range(1, 2 ** n))


def _covector_tuple(rows: list[int], n: int) -> tuple:
    return matrix_to_tuple(_inverse(_transpose(rows, n), n), n)


def _is_primitive(poly: int, n: int) -> bool:
    """poly includes the x^n term; primitive iff x has order 2^n - 1 mod poly."""
    order = 2 ** n - 1

    def mulmod(a, b):
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> n & 1:
                a ^= poly
        return r

    def powx(e):
        result, base = 1, 2
        while e:
            if e & 1:
                result = mulmod(result, base)
            base = mulmod(base, base)
            e >>= 1
        return result

    if powx(order) != 1:
        return False
    q = order
    primes = []
    p = 2
    while p * p <= q:
        if q % p == 0:
            primes.append(p)
            while q % p == 0:
                q //= p
        p += 1
    if q > 1:
        primes.append(q)
    return all(powx(order // p) != 1 for p in primes)


def primitive_polynomial(n: int) -> int:
    for poly in range(2 ** n + 1, 2 ** (n + 1), 2):
        if _is_primitive(poly, n):
            return poly
    raise AssertionError("no primitive polynomial found")


def singer_rows(n: int) -> list[int]:
    """Companion matrix of the least primitive polynomial: multiplication by x."""
    if n == 1:
        return [1]
    poly = primitive_polynomial(n)
    rows = [1 << (i + 1) for i in range(n - 1)]
    rows.append(poly ^ (1 << n))
    return rows


def transvection_rows(n: int, i: int, j: int) -> list[int]:
    """I + E_ij: row i gains coordinate j."""
    rows = _identity_rows(n)
    rows[i] ^= 1 << j
    return rows


def gl_order(n: int) -> int:
    return prod(2 ** n - 2 ** i for i in range(n))


def gl_generator_rows(n: int) -> list[list[int]]:
    """Singer cycle plus the transvection I + E_01 (checked to generate)."""
    if n == 1:
        return []
    return [singer_rows(n), transvection_rows(n, 0, 1)]


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupSpec:
    name: str
    degree: int
    generators: tuple  # of Permutation
    provenance: str = ""

    def group(self) -> PermutationGroup:
        return PermutationGroup(self.degree, self.generators)


@dataclass
class ExtendedGL:
    """GL_n(2) x| <iota> on vectors (points 1..N) and covectors (N+1..2N)."""
    n: int
    group: PermutationGroup
    gl: PermutationGroup
    iota: Permutation

    def embed_matrix(self, rows: list[int]) -> Permutation:
        return Permutation.from_tuple(_hat_tuple(rows, self.n))


def _hat_tuple(rows: list[int], n: int) -> tuple:
    N = 2 ** n - 1
    vec = matrix_to_tuple(rows, n)
    cov = _covector_tuple(rows, n)
    return vec + tuple(N + x for x in cov)


def symmetric_group(n: int) -> PermutationGroup:
    if n < 1:
        raise InputError("sym needs n >= 1")
    gens = []
    if n >= 2:
        gens = [Permutation.from_cycles(n, [[1, 2]]), Permutation.from_cycles(n, [list(range(1, n + 1))])]
    return PermutationGroup(n, gens)


def alternating_group(n: int) -> PermutationGroup:
    if n < 1:
        raise InputError("alt needs n >= 1")
    if n < 3:
        return PermutationGroup(n, [])
    if n % 2:
        gens = [[[1, 2, 3]], [list(range(1, n + 1))]]
    else:
        gens = [[[1, 2, 3]], [list(range(2, n + 1))]]
    return PermutationGroup(n, [Permutation.from_cycles(n, c) for c in gens])


def cyclic_group(n: int) -> PermutationGroup:
    if n < 1:
        raise InputError("cyclic needs n >= 1")
    return PermutationGroup(n, [Permutation.from_cycles(n, [list(range(1, n + 1))])] if n > 1 else [])


def dihedral_group(n: int) -> PermutationGroup:
    """Dihedral group of order 2n on n points (n >= 3)."""
    if n < 3:
        raise InputError("dihedral needs n >= 3")
    rot = Permutation.from_cycles(n, [list(range(1, n + 1))])
    refl = Permutation([n + 1 - i for i in range(1, n + 1)])
    return PermutationGroup(n, [rot, refl])


def general_linear_group(n: int) -> PermutationGroup:
    """GL_n(2) on the 2^n - 1 nonzero vectors."""
    if n < 1:
        raise InputError("gl2 needs n >= 1")
    gens = [matrix_to_tuple(r, n) for r in gl_generator_rows(n)]
    G = PermutationGroup(2 ** n - 1, gens)
    if G.order() != gl_order(n):
        raise AssertionError(f"GL_{n}(2) generators produced order {G.order()}")
    return G


def extend_by_inverse_transpose(n: int) -> ExtendedGL:
    """GL_n(2) x| <iota> with iota: x -> (x^t)^-1, on 2(2^n - 1) points."""
    if n < 3:
        raise InputError("extend_by_inverse_transpose needs n >= 3")
    N = 2 ** n - 1
    rows = gl_generator_rows(n)
    gl_gens = [_hat_tuple(r, n) for r in rows]
    iota = tuple(list(range(N, 2 * N)) + list(range(N)))
    # validation: iota^2 = 1 and iota^-1 g iota is the image of (g^t)^-1
    assert is_identity(pmul(iota, iota))
    for r in rows:
        g = _hat_tuple(r, n)
        swapped = _hat_tuple(_inverse(_transpose(r, n), n), n)
        if pconj(g, iota) != swapped:
            raise AssertionError("inverse-transpose conjugation check failed")
    gl = PermutationGroup(2 * N, gl_gens)
    G = gl.closure([iota])
    if gl.order() != gl_order(n) or G.order() != 2 * gl_order(n):
        raise AssertionError("unexpected order for the inverse-transpose extension")
    return ExtendedGL(n=n, group=G, gl=gl, iota=Permutation.from_tuple(iota))


def parabolic_order(dims) -> int:
    dims = list(dims)
    off = sum(dims[a] * dims[b] for a in range(len(dims)) for b in range(a + 1, len(dims)))
    return 2 ** off * prod(gl_order(d) for d in dims)


def flag_stabilizer_rows(n: int, dims) -> list[list[int]]:
    dims = [int(d) for d in dims]
    if not dims or any(d < 1 for d in dims) or sum(dims) != n:
        raise InputError(f"dims {dims} must be positive and sum to {n}")
    block = []
    for k, d in enumerate(dims):
        block += [k] * d
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j and block[i] <= block[j]:
                gens.append(transvection_rows(n, i, j))
    return gens


def flag_stabilizer(n: int, dims, *, extended: bool = False) -> PermutationGroup:
    """Block upper-triangular subgroup of GL_n(2) for the given layer dimensions.

    It stabilizes the flag of spans of leading coordinates, e.g. dims
    (1, 2, 2) in GL_5(2) fixes <e_1> < <e_1, e_2, e_3>.
    ``extended`` embeds it in the degree 2(2^n-1) action of the extension.
    """
    rows = flag_stabilizer_rows(n, dims)
    if extended:
        gens = [_hat_tuple(r, n) for r in rows]
        degree = 2 * (2 ** n - 1)
    else:
        gens = [matrix_to_tuple(r, n) for r in rows]
        degree = 2 ** n - 1
    H = PermutationGroup(degree, gens, order=parabolic_order(dims))
    return H


def direct_product(G1: PermutationGroup, G2: PermutationGroup) -> PermutationGroup:
    """G1 x G2 on the disjoint union (G2's points shifted by deg G1)."""
    n1, n2 = G1.degree, G2.degree
    gens = [g + tuple(range(n1, n1 + n2)) for g in G1._gens]
    gens += [tuple(range(n1)) + tuple(n1 + x for x in g) for g in G2._gens]
    return PermutationGroup(n1 + n2, gens, order=G1.order() * G2.order())


FAMILIES = ("sym", "alt", "cyclic", "dihedral", "gl2", "ghat")


def builtin(name: str, parameter: int | None = None) -> PermutationGroup:
    """Named group; accepts ``builtin("sym", 4)`` or ``builtin("sym:4")``."""
    if parameter is None:
        if ":" not in name:
            raise InputError(f"builtin {name!r} needs a parameter (family:param)")
        name, _, param = name.partition(":")
        try:
            parameter = int(param)
        except ValueError:
            raise InputError(f"bad builtin parameter {param!r}") from None
    fam = name.strip().lower()
    n = int(parameter)
    if fam == "sym":
        return symmetric_group(n)
    if fam == "alt":
        return alternating_group(n)
    if fam == "cyclic":
        return cyclic_group(n)
    if fam == "dihedral":
        return dihedral_group(n)
    if fam == "gl2":
        if n > 8:
            raise InputError("gl2 supports n <= 8")
        return general_linear_group(n)
    if fam == "ghat":
        if n > 8:
            raise InputError("ghat supports n <= 8")
        return extend_by_inverse_transpose(n).group
    raise InputError(f"unsupported family {name!r}; expected one of {', '.join(FAMILIES)}")


def builtin_order_formula(name: str, n: int) -> int:
    return {
        "sym": lambda: factorial(n),
        "alt": lambda: factorial(n) // 2 if n >= 2 else 1,
        "cyclic": lambda: n,
        "dihedral": lambda: 2 * n,
        "gl2": lambda: gl_order(n),
        "ghat": lambda: 2 * gl_order(n),
    }[name]()


# ---------------------------------------------------------------------------
# "permgroup v1" files

HEADER = "permgroup v1"


def parse_group_file(text: str, name: str = "file") -> GroupSpec:
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and (not lines[idx].strip() or lines[idx].lstrip().startswith("#")):
        idx += 1
    if idx == len(lines):
        raise InputError("line 1: missing 'permgroup v1 degree=<n>' header")
    head = lines[idx].split()
    if head[:2] != ["permgroup", "v1"] or len(head) != 3 or not head[2].startswith("degree="):
        raise InputError(f"line {idx + 1}: expected 'permgroup v1 degree=<n>', got {lines[idx]!r}")
    try:
        degree = int(head[2][len("degree="):])
    except ValueError:
        raise InputError(f"line {idx + 1}: bad degree in header") from None
    if degree < 1:
        raise InputError(f"line {idx + 1}: degree must be positive")
    gens = []
    notes = []
    for lineno in range(idx + 1, len(lines)):
        raw = lines[lineno].strip()
        if not raw:
            continue
        if raw.startswith("#"):
            notes.append(raw[1:].strip())
            continue
        try:
            cycles = parse_cycles(raw)
            for cyc in cycles:
                for x in cyc:
                    if not 1 <= x <= degree:
                        raise InputError(f"point {x} exceeds degree {degree}")
            gens.append(Permutation.from_cycles(degree, cycles))
        except InputError as exc:
            raise InputError(f"line {lineno + 1}: {exc}") from None
    return GroupSpec(name=name, degree=degree, generators=tuple(gens),
                     provenance="; ".join(notes))


def write_group_file(spec: GroupSpec) -> str:
    out = [f"{HEADER} degree={spec.degree}"]
    if spec.provenance:
        for note in spec.provenance.split("; "):
            out.append(f"# {note}")
    for g in spec.generators:
        out.append(format_cycles(g._img))
    return "\n".join(out) + "\n"


def spec_of(name: str, G: PermutationGroup, provenance: str = "") -> GroupSpec:
    return GroupSpec(name=name, degree=G.degree, generators=tuple(G.generators),
                     provenance=provenance)

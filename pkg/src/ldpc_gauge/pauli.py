"""Phase-free Pauli algebra on labelled qubit registers.

Operators are pairs of bitsets (x-part, z-part). Signs and phases of products
are not tracked, which is sufficient for the CSS-type Hamiltonians and
Clifford maps handled here: every map is specified by generator images and
every Hamiltonian carries its signs on the coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Hashable, Iterable, Optional, Sequence

from .gf2 import GF2Vector, echelon

__all__ = [
    "QubitRegister",
    "PauliOperator",
    "PauliHamiltonian",
    "SymplecticMap",
    "commute",
    "stabilizer_group_rank",
    "ground_space_log2_dim",
    "apply_map",
    "compose",
    "hamiltonian_equal",
    "NonCommutingError",
]


class NonCommutingError(ValueError):
    """Raised when a commuting set is required but two operators anticommute."""

    def __init__(self, i: int, j: int) -> None:
        super().__init__(f"operators {i} and {j} anticommute")
        self.pair = (i, j)


def _support(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


class QubitRegister:
    """Ordered, duplicate-free list of qubit labels."""

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable[Hashable]) -> None:
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise ValueError("qubit labels must be unique")

    @classmethod
    def named(cls, prefix: str, count: int) -> QubitRegister:
        return cls(f"{prefix}{i}" for i in range(count))

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: Hashable) -> int:
        return self._index[label]

    def __contains__(self, label: Hashable) -> bool:
        return label in self._index

    def __add__(self, other: QubitRegister) -> QubitRegister:
        return QubitRegister(self.labels + other.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QubitRegister):
            return NotImplemented
        return self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"QubitRegister(size={self.size})"


class PauliOperator:
    """Tensor product of X, Y, Z factors on a register, up to sign."""

    __slots__ = ("register", "x", "z")

    def __init__(self, register: QubitRegister, x: int = 0, z: int = 0) -> None:
        n = register.size
        if x < 0 or z < 0 or x >> n or z >> n:
            raise ValueError("operator bits exceed register size")
        self.register = register
        self.x = x
        self.z = z

    @classmethod
    def from_supports(
        cls, register: QubitRegister, x: Iterable[int] = (), z: Iterable[int] = ()
    ) -> PauliOperator:
        xb = zb = 0
        for i in x:
            xb ^= 1 << i
        for i in z:
            zb ^= 1 << i
        return cls(register, xb, zb)

    @classmethod
    def from_labels(
        cls, register: QubitRegister, x: Iterable[Hashable] = (), z: Iterable[Hashable] = ()
    ) -> PauliOperator:
        return cls.from_supports(register, (register.index(a) for a in x), (register.index(a) for a in z))

    @classmethod
    def identity(cls, register: QubitRegister) -> PauliOperator:
        return cls(register)

    @property
    def x_part(self) -> GF2Vector:
        return GF2Vector(self.register.size, self.x)

    @property
    def z_part(self) -> GF2Vector:
        return GF2Vector(self.register.size, self.z)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def support(self) -> list[int]:
        return _support(self.x | self.z)

    def is_identity(self) -> bool:
        return not (self.x or self.z)

    def embed(self, register: QubitRegister) -> PauliOperator:
        """The same operator on a register containing all of this one's labels."""
        src = self.register.labels
        x = z = 0
        for i in _support(self.x):
            x |= 1 << register.index(src[i])
        for i in _support(self.z):
            z |= 1 << register.index(src[i])
        return PauliOperator(register, x, z)

    def restrict(self, register: QubitRegister) -> PauliOperator:
        """Drop factors on qubits missing from ``register``."""
        src = self.register.labels
        x = z = 0
        for i in _support(self.x):
            if src[i] in register:
                x |= 1 << register.index(src[i])
        for i in _support(self.z):
            if src[i] in register:
                z |= 1 << register.index(src[i])
        return PauliOperator(register, x, z)

    def to_text(self, labels: bool = False) -> str:
        """Sparse rendering such as ``"X3 X7 Z12"``; ``"I"`` for the identity."""
        parts = []
        for i in self.support():
            p = "Y" if (self.x >> i & 1) and (self.z >> i & 1) else ("X" if self.x >> i & 1 else "Z")
            parts.append(f"{p}({self.register.labels[i]})" if labels else f"{p}{i}")
        return " ".join(parts) or "I"

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        if self.register != other.register:
            raise ValueError("operators live on different registers")
        return PauliOperator(self.register, self.x ^ other.x, self.z ^ other.z)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return self.x == other.x and self.z == other.z and self.register == other.register

    def __hash__(self) -> int:
        return hash((self.x, self.z, self.register.size))

    def __repr__(self) -> str:
        return f"PauliOperator({self.to_text()})"


def commute(p: PauliOperator, q: PauliOperator) -> int:
    """Symplectic form: 0 if p and q commute, 1 if they anticommute."""
    if p.register != q.register:
        raise ValueError("operators live on different registers")
    return ((p.x & q.z).bit_count() + (p.z & q.x).bit_count()) & 1


def _sym_rows(ops: Sequence[PauliOperator]) -> list[int]:
    if not ops:
        return []
    n = ops[0].register.size
    return [op.x | (op.z << n) for op in ops]


def _check_commuting(ops: Sequence[PauliOperator]) -> None:
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if commute(ops[i], ops[j]):
                raise NonCommutingError(i, j)


def stabilizer_group_rank(ops: Sequence[PauliOperator]) -> int:
    """GF(2) rank of the stacked (x|z) rows of a commuting set."""
    _check_commuting(ops)
    return len(echelon(_sym_rows(ops)))


def _to_fraction(c) -> Fraction:
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficients must be rational, got {type(c).__name__}")


class PauliHamiltonian:
    """Sum of rational multiples of Pauli operators on one register.

    Repeated operators are merged and zero coefficients dropped; terms are kept
    in a canonical order so equal Hamiltonians compare equal.
    """

    __slots__ = ("register", "terms")

    def __init__(self, register: QubitRegister, terms: Iterable[tuple[object, PauliOperator]] = ()) -> None:
        merged: dict[tuple[int, int], Fraction] = {}
        for coeff, op in terms:
            if op.register != register:
                raise ValueError("term acts on a different register")
            key = (op.x, op.z)
            merged[key] = merged.get(key, Fraction(0)) + _to_fraction(coeff)
        self.register = register
        self.terms = tuple(
            (c, PauliOperator(register, x, z)) for (x, z), c in sorted(merged.items()) if c != 0
        )

    @property
    def operators(self) -> list[PauliOperator]:
        return [op for _, op in self.terms]

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: PauliHamiltonian) -> PauliHamiltonian:
        if self.register != other.register:
            raise ValueError("Hamiltonians live on different registers")
        return PauliHamiltonian(self.register, self.terms + other.terms)

    def map_terms(self, f) -> PauliHamiltonian:
        """Apply an operator map term by term; ``f`` must return operators on one register."""
        mapped = [(c, f(op)) for c, op in self.terms]
        register = mapped[0][1].register if mapped else self.register
        return PauliHamiltonian(register, mapped)

    def to_text(self, labels: bool = False) -> list[str]:
        return [f"{c} * {op.to_text(labels)}" for c, op in self.terms]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliHamiltonian):
            return NotImplemented
        return self.register == other.register and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __repr__(self) -> str:
        return f"PauliHamiltonian({len(self.terms)} terms on {self.register.size} qubits)"


def hamiltonian_equal(h1: PauliHamiltonian, h2: PauliHamiltonian) -> bool:
    if h1.register != h2.register:
        raise ValueError("Hamiltonians live on different registers")
    return h1.terms == h2.terms


def ground_space_log2_dim(h: PauliHamiltonian) -> int:
    """Number of qubits minus the rank of the term group.

    Only meaningful at stabilizer points: every term must commute with every
    other and carry a negative coefficient.
    """
    for c, op in h.terms:
        if c >= 0:
            raise ValueError(f"term {op.to_text()} has non-negative coefficient {c}")
    return h.register.size - stabilizer_group_rank(h.operators)


class SymplecticMap:
    """Clifford map (up to signs) given by the images of X_j and Z_j.

    The symplectic form is checked at construction, so an ill-defined duality
    fails where it is defined rather than where it is used.
    """

    __slots__ = ("source", "target", "x_images", "z_images")

    def __init__(
        self,
        source: QubitRegister,
        target: QubitRegister,
        x_images: Sequence[PauliOperator],
        z_images: Sequence[PauliOperator],
    ) -> None:
        if source.size != target.size:
            raise ValueError(f"register sizes differ: {source.size} vs {target.size}")
        if len(x_images) != source.size or len(z_images) != source.size:
            raise ValueError("need one X and one Z image per source qubit")
        for op in list(x_images) + list(z_images):
            if op.register != target:
                raise ValueError("image lives on the wrong register")
        self.source = source
        self.target = target
        self.x_images = tuple(x_images)
        self.z_images = tuple(z_images)
        bad = self.form_violation()
        if bad is not None:
            raise ValueError(f"map does not preserve the symplectic form: {bad}")

    @classmethod
    def identity(cls, register: QubitRegister) -> SymplecticMap:
        n = register.size
        return cls(
            register,
            register,
            [PauliOperator(register, 1 << j, 0) for j in range(n)],
            [PauliOperator(register, 0, 1 << j) for j in range(n)],
        )

    def matrix_rows(self) -> list[int]:
        """Rows of the 2n x 2n matrix M: images of X_0..X_{n-1}, then Z_0..Z_{n-1}."""
        return _sym_rows(list(self.x_images) + list(self.z_images))

    def form_violation(self) -> Optional[str]:
        """First generator pair whose commutation is not preserved, if any."""
        n = self.source.size
        imgs = list(self.x_images) + list(self.z_images)
        for a in range(2 * n):
            for b in range(a + 1, 2 * n):
                expected = 1 if b == a + n else 0
                if commute(imgs[a], imgs[b]) != expected:
                    kind = lambda t: ("X" if t < n else "Z") + str(t % n)
                    return f"{kind(a)} and {kind(b)}"
        return None

    def inverse(self) -> SymplecticMap:
        """Preimages of the target generators, read off the symplectic form."""
        n = self.source.size
        tgt = self.target
        xi, zi = [], []
        for j in range(n):
            for gen, out in ((PauliOperator(tgt, 1 << j, 0), xi), (PauliOperator(tgt, 0, 1 << j), zi)):
                x = z = 0
                for s in range(n):
                    if commute(gen, self.z_images[s]):
                        x |= 1 << s
                    if commute(gen, self.x_images[s]):
                        z |= 1 << s
                out.append(PauliOperator(self.source, x, z))
        return SymplecticMap(tgt, self.source, xi, zi)

    def __call__(self, p: PauliOperator) -> PauliOperator:
        return apply_map(self, p)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymplecticMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.x_images == other.x_images
            and self.z_images == other.z_images
        )

    def __repr__(self) -> str:
        return f"SymplecticMap({self.source.size} qubits)"


def apply_map(m: SymplecticMap, p: PauliOperator) -> PauliOperator:
    """Linear extension of the generator images."""
    if p.register != m.source:
        raise ValueError("operator is not on the map's source register")
    x = z = 0
    for j in _support(p.x):
        x ^= m.x_images[j].x
        z ^= m.x_images[j].z
    for j in _support(p.z):
        x ^= m.z_images[j].x
        z ^= m.z_images[j].z
    return PauliOperator(m.target, x, z)


def compose(m1: SymplecticMap, m2: SymplecticMap) -> SymplecticMap:
    """The map applying m1 first, then m2."""
    if m1.target != m2.source:
        raise ValueError("m1's target register is not m2's source")
    return SymplecticMap(
        m1.source,
        m2.target,
        [apply_map(m2, p) for p in m1.x_images],
        [apply_map(m2, p) for p in m1.z_images],
    )


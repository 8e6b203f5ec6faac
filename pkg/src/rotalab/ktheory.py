"""Integer invariant pairs and the unipotent relabeling they carry.

A class here is a pair of ordered integer pairs: the even-degree part
records (unit class, projection class) multiplicities against a fixed
labeled basis, the odd-degree part records the two generating unitaries.
The basis identification is a convention of this module, chosen once and
used consistently; nothing below derives it.

Tensoring by the rank-one twisting line bundle indexed by an integer b
relabels the even part through the unipotent matrix [[1, b], [0, 1]] and
leaves the odd part alone. Composing twists adds their indices, so the
twist action is a homomorphism from the integers into the invertible
integer matrices of determinant one.
"""

from dataclasses import dataclass

from .scalars import IntMatrix2

__all__ = ["KClass", "twist_matrix", "twist_apply", "twist_compose"]


@dataclass(frozen=True)
class KClass:
    """Even and odd integer invariants, each a pair of multiplicities."""

    k0: tuple
    k1: tuple

    def __post_init__(self):
        for name, pair in (("k0", self.k0), ("k1", self.k1)):
            if len(pair) != 2 or not all(isinstance(v, int) for v in pair):
                raise ValueError(f"{name} must be a pair of integers, got {pair!r}")
        object.__setattr__(self, "k0", tuple(self.k0))
        object.__setattr__(self, "k1", tuple(self.k1))


def twist_matrix(b: int) -> IntMatrix2:
    """Unipotent matrix implementing the degree-b twist on the even part."""
    return IntMatrix2(1, int(b), 0, 1)


def twist_apply(b: int, cls: KClass) -> KClass:
    """Tensor by the degree-b twist: shear the even pair, fix the odd pair.

    The even pair transforms as a column vector, so (x, y) goes to
    (x + b*y, y). All arithmetic is exact.
    """
    x, y = cls.k0
    new_even = twist_matrix(b).apply_pair(x, y)
    return KClass((int(new_even[0]), int(new_even[1])), cls.k1)


def twist_compose(b: int, b_next: int) -> int:
    """Index of the twist obtained by applying degree b then degree b_next."""
    return int(b) + int(b_next)

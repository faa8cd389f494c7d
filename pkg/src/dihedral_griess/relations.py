"""The linear relation tying the two distance-two alpha vectors to the axes.

For the pair ``(a_{k-1}, a_k)`` the difference of the alpha vectors centred at
``k`` and ``k-1`` is an explicit combination of six consecutive axes::

    D(k) - D(k-1) = c1 (a_{k-1} - a_k) + c2 (a_{k-2} - a_{k+1})
                    + 1/16 (a_{k-3} - a_{k+2})

with ``D(k) = alpha(a_{k-1}, a_{k+1})``.  The coefficients depend only on
``lambda1 = (e|f)`` and ``lambda2 = (e|e^{tau_f})``; they are written with
plain arithmetic so polynomial scalars pass through unchanged.
"""

from __future__ import annotations

from fractions import Fraction

from .element import Element, axis_label

SIXTEENTH = Fraction(1, 16)


def relation_coefficients(l1, l2):
    c1 = (2 ** 11 * l1 * l1 - 144 * l1 + Fraction(33, 16) + 8 * l2) * Fraction(1, 7)
    c2 = 16 * l1 - Fraction(3, 8)
    return c1, c2


def relation_vector(n: int, k: int, l1, l2) -> Element:
    """The axis combination equal to ``D(k) - D(k-1)`` (indices mod n)."""
    c1, c2 = relation_coefficients(l1, l2)
    out = Element()
    for coeff, plus, minus in ((c1, k - 1, k), (c2, k - 2, k + 1), (SIXTEENTH, k - 3, k + 2)):
        out = out + coeff * (Element.basis(axis_label(plus, n)) - Element.basis(axis_label(minus, n)))
    return out


def projected_relation(n: int, l1, l2) -> Element:
    """``16 (L_0 + L_1)``: the tau_f-odd part of the relation.

    In tau_f-odd coordinates this is
    ``p1 (a_{-1} - a_1) + p2 (a_{-2} - a_2) + (a_{-3} - a_3)``, where
    ``p1 = (2^15 l1^2 - 2^9 l1 + 2^7 l2 - 9)/7`` and ``p2 = 2^8 l1 - 5``.
    It must vanish in every admissible algebra.
    """
    return 16 * (relation_vector(n, 0, l1, l2) + relation_vector(n, 1, l1, l2))

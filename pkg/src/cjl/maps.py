"""Ring maps between polynomial contexts, used for base change.

A :class:`PolyRingMap` sends each source variable to a target polynomial
and is checked to kill the source quotient (so it descends).  Evaluation
at a rational point is the special case where the target has no variables
at all; :func:`evaluation_map` builds that directly.
"""

from __future__ import annotations

from typing import Sequence

from .errors import RingMismatchError, ValidationError
from .poly import Polynomial, RingContext


class PolyRingMap:
    def __init__(self, source: RingContext, target: RingContext,
                 images: Sequence[Polynomial]):
        if len(images) != source.nvars:
            raise ValidationError("need one image per source variable")
        for f in images:
            target.check_same(f.ctx)
        self.source = source
        self.target = target
        self.images = tuple(images)
        for g in source.quotient_gens:
            if not target.is_zero(self._push(g)):
                raise ValidationError(
                    "map does not kill the source quotient ideal; "
                    "it does not descend")

    def _push(self, f: Polynomial) -> Polynomial:
        out = self.target.zero()
        for m, c in f.terms:
            term = self.target.constant(c)
            for i, e in enumerate(m):
                if e:
                    term = term * self.images[i] ** e
            out = out + term
        return out

    def apply(self, f: Polynomial) -> Polynomial:
        if not self.source.same(f.ctx):
            raise RingMismatchError("element not in the map's source ring")
        return self.target.normal_form(self._push(f))

    def extend_ideal(self, I):
        from .groebner import Ideal
        if not self.source.same(I.ctx):
            raise RingMismatchError("ideal not in the map's source ring")
        return Ideal(self.target, [self.apply(g.cast(self.source))
                                   for g in I.gens])


def identity_map(ctx: RingContext) -> PolyRingMap:
    return PolyRingMap(ctx, ctx, ctx.gens())


def quotient_map(source: RingContext, target: RingContext) -> PolyRingMap:
    """Projection onto a quotient of the same variables."""
    if source.names != target.names:
        raise ValidationError("quotient map needs identical variable lists")
    return PolyRingMap(source, target, target.gens())


def evaluation_map(source: RingContext, point) -> PolyRingMap:
    """Evaluation at a point, landing in the ground field (a ring context
    with no variables)."""
    if len(point) != source.nvars:
        raise ValidationError("point has wrong number of coordinates")
    scalars = RingContext(source.field, ())
    return PolyRingMap(source, scalars, [scalars.constant(c) for c in point])

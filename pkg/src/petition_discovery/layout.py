"""Server-side geometry for the two discovery views.

The topic mosaic is a squarified treemap: tile areas proportional to
topic weight, aspect ratios kept near square. The petition view packs
circles sized by supporting votes: seeded random placement relaxed by
pairwise separation and boundary containment until nothing overlaps.
Both layouts are pure functions of (input, seed) so responses can be
compared byte-for-byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CannotFit, EmptyInput, NonpositiveCanvas

MAX_FILL_RATIO = 0.7
# When the canvas has to grow, aim lower than the hard ceiling so the
# relaxation has room to settle.
AUTO_FILL_TARGET = 0.5
MAX_CANVAS_GROWTH = 8.0


@dataclass(frozen=True, slots=True)
class Tile:
    topic_id: str
    x: float
    y: float
    width: float
    height: float
    color_index: int


@dataclass(frozen=True, slots=True)
class CirclePlacement:
    petition_id: str
    cx: float
    cy: float
    radius: float


@dataclass(frozen=True, slots=True)
class PackResult:
    placements: tuple[CirclePlacement, ...]
    width: float
    height: float
    iterations: int


def mosaic_layout(
    weights: list[tuple[str, float]],
    width: float,
    height: float,
    zero_weight_floor: float = 1.0,
) -> list[Tile]:
    """Squarified treemap of the weighted topics over the canvas.

    Tile areas are proportional to weight; zero weights are lifted to
    `zero_weight_floor` so every topic stays visible and clickable.
    Output tiles are in input order, color_index = input position.
    """
    if width <= 0 or height <= 0:
        raise NonpositiveCanvas(f"canvas must be positive, got {width}x{height}")
    if not weights:
        raise EmptyInput("mosaic needs at least one topic weight")
    effective = []
    for topic_id, weight in weights:
        if weight < 0:
            raise ValueError(f"topic {topic_id!r}: negative weight {weight}")
        effective.append(weight if weight > 0 else zero_weight_floor)
    if not any(w > 0 for w in effective):
        raise EmptyInput("all weights are zero and the floor is zero")

    total = sum(effective)
    canvas_area = width * height
    items = [
        (effective[i] / total * canvas_area, i)
        for i in range(len(effective))
    ]
    items.sort(key=lambda it: (-it[0], it[1]))

    cells: list[tuple[int, float, float, float, float]] = []
    _squarify(items, 0.0, 0.0, width, height, cells)

    by_index = {c[0]: c for c in cells}
    tiles = []
    for i, (topic_id, _) in enumerate(weights):
        _, x, y, w, h = by_index[i]
        tiles.append(Tile(topic_id=topic_id, x=x, y=y, width=w, height=h, color_index=i))
    return tiles


def _worst_ratio(areas: list[float], total: float, side: float) -> float:
    thickness = total / side
    worst = 1.0
    for a in areas:
        cell = a / thickness
        worst = max(worst, thickness / cell, cell / thickness)
    return worst


def _squarify(items, x: float, y: float, w: float, h: float, out) -> None:
    while items:
        if len(items) == 1:
            area, idx = items[0]
            out.append((idx, x, y, w, h))
            return
        horizontal = h > w  # strip along the top edge, cells left-to-right
        side = w if horizontal else h

        strip = [items[0]]
        strip_total = items[0][0]
        k = 1
        while k < len(items):
            areas = [a for a, _ in strip]
            if _worst_ratio(areas + [items[k][0]], strip_total + items[k][0], side) <= _worst_ratio(areas, strip_total, side):
                strip.append(items[k])
                strip_total += items[k][0]
                k += 1
            else:
                break

        thickness = strip_total / side
        pos = 0.0
        for i, (area, idx) in enumerate(strip):
            span = side - pos if i == len(strip) - 1 else area / thickness
            if horizontal:
                out.append((idx, x + pos, y, span, thickness))
            else:
                out.append((idx, x, y + pos, thickness, span))
            pos += span

        items = items[k:]
        if horizontal:
            y += thickness
            h -= thickness
        else:
            x += thickness
            w -= thickness


def circle_radius(supports: int, scale: float, min_radius: float) -> float:
    """Radius with area proportional to supports, floored for visibility."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    return max(min_radius, scale * math.sqrt(supports))


def pack_circles(
    circles: list[tuple[str, float]],
    width: float,
    height: float,
    seed: int = 0,
    max_iterations: int = 500,
) -> PackResult:
    """Place circles without overlap inside the canvas.

    Initial positions come from a seeded generator; each iteration
    pushes overlapping pairs apart along their center line and clamps
    everything back inside the canvas. If the circles need more room
    than MAX_FILL_RATIO of the canvas, the canvas grows (aspect kept)
    up to MAX_CANVAS_GROWTH per side, then CannotFit.
    """
    if width <= 0 or height <= 0:
        raise NonpositiveCanvas(f"canvas must be positive, got {width}x{height}")
    if not circles:
        raise EmptyInput("nothing to pack")
    radii = np.array([r for _, r in circles], dtype=np.float64)
    if np.any(radii <= 0):
        raise ValueError("all radii must be positive")

    total_area = float(np.sum(np.pi * radii**2))
    growth = 1.0
    if total_area > MAX_FILL_RATIO * width * height:
        growth = math.sqrt(total_area / (AUTO_FILL_TARGET * width * height))
    growth = max(growth, 2.0 * float(np.max(radii)) / min(width, height))
    if growth > MAX_CANVAS_GROWTH:
        raise CannotFit(
            f"circles need a canvas {growth:.1f}x larger; cap is {MAX_CANVAS_GROWTH}x"
        )
    w, h = width * growth, height * growth

    n = len(circles)
    rng = np.random.default_rng(seed)
    pos = np.empty((n, 2), dtype=np.float64)
    pos[:, 0] = rng.uniform(radii, w - radii)
    pos[:, 1] = rng.uniform(radii, h - radii)

    # Separate to tangency plus a slack far below the advertised epsilon,
    # so boundary clamping and float noise cannot push pairs back over it.
    diagonal = math.hypot(w, h)
    epsilon = 1e-6 * diagonal
    slack = 0.01 * epsilon
    target = radii[:, None] + radii[None, :] + slack
    np.fill_diagonal(target, 0.0)

    iterations = 0
    while iterations < max_iterations:
        dx = pos[:, 0][:, None] - pos[:, 0][None, :]
        dy = pos[:, 1][:, None] - pos[:, 1][None, :]
        dist = np.sqrt(dx * dx + dy * dy)
        overlap = target - dist
        np.fill_diagonal(overlap, -1.0)
        if float(np.max(overlap)) <= slack * 0.5:
            break
        iterations += 1
        # Coincident centers get a deterministic separation direction.
        degenerate = (dist < 1e-12) & (overlap > 0)
        if np.any(degenerate):
            ii, jj = np.nonzero(degenerate)
            angles = 2.0 * np.pi * (ii * n + jj) / (n * n)
            dx[ii, jj] = np.cos(angles) * 1e-9
            dy[ii, jj] = np.sin(angles) * 1e-9
            dist[ii, jj] = 1e-9
        # Over-relaxed separation (each of the pair moves 0.85 * overlap)
        # settles far faster than the exact split and stays stable.
        push = np.where(overlap > 0, overlap, 0.0) / np.maximum(dist, 1e-12)
        pos[:, 0] += 0.85 * np.einsum("ij,ij->i", push, dx)
        pos[:, 1] += 0.85 * np.einsum("ij,ij->i", push, dy)
        pos[:, 0] = np.clip(pos[:, 0], radii, w - radii)
        pos[:, 1] = np.clip(pos[:, 1], radii, h - radii)

    placements = tuple(
        CirclePlacement(
            petition_id=circles[i][0],
            cx=float(pos[i, 0]),
            cy=float(pos[i, 1]),
            radius=float(radii[i]),
        )
        for i in range(n)
    )
    return PackResult(placements=placements, width=w, height=h, iterations=iterations)


def max_pairwise_overlap(placements) -> float:
    """Largest (r_i + r_j) - distance over all pairs; <= 0 means disjoint."""
    worst = float("-inf")
    for i in range(len(placements)):
        a = placements[i]
        for j in range(i + 1, len(placements)):
            b = placements[j]
            d = math.hypot(a.cx - b.cx, a.cy - b.cy)
            worst = max(worst, a.radius + b.radius - d)
    return worst

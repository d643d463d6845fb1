"""
Closed-form boundary integrals over a straight segment with uniform density.

All array functions broadcast: observation and segment arguments may be
scalars or equally shaped arrays. Segment-local coordinates are ``u`` along
the tangent measured from the midpoint and ``v`` along the segment normal
(tangent rotated counter-clockwise), ``a`` is the half length.
"""

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..geometry import Point, Segment

type FloatArray = NDArray[np.float64]


def _local(
	ox: ArrayLike, oy: ArrayLike, mx: ArrayLike, my: ArrayLike, tx: ArrayLike, ty: ArrayLike
) -> tuple[FloatArray, FloatArray]:
	dx = np.subtract(ox, mx)
	dy = np.subtract(oy, my)
	u = dx * tx + dy * ty
	v = dy * tx - dx * ty
	return u, v


def log_potential(
	ox: ArrayLike,
	oy: ArrayLike,
	mx: ArrayLike,
	my: ArrayLike,
	tx: ArrayLike,
	ty: ArrayLike,
	half: ArrayLike,
) -> FloatArray:
	"""Integral of ln|r - r'| along the segment."""
	u, v = _local(ox, oy, mx, my, tx, ty)
	up = u + half
	um = u - half
	rp = np.hypot(up, v)
	rm = np.hypot(um, v)
	theta = np.arctan2(v, um) - np.arctan2(v, up)
	with np.errstate(divide="ignore", invalid="ignore"):
		lp = np.where(rp > 0, up * np.log(rp), 0.0)
		lm = np.where(rm > 0, um * np.log(rm), 0.0)
	return lp - lm - 2.0 * np.asarray(half) + v * theta


def normal_field(
	ox: ArrayLike,
	oy: ArrayLike,
	nx: ArrayLike,
	ny: ArrayLike,
	mx: ArrayLike,
	my: ArrayLike,
	tx: ArrayLike,
	ty: ArrayLike,
	half: ArrayLike,
) -> FloatArray:
	"""
	Integral of (r - r').n / |r - r'|^2 along the segment for the observation
	direction n. On the segment line the angle term is the principal value 0.
	"""
	u, v = _local(ox, oy, mx, my, tx, ty)
	nt = np.multiply(nx, tx) + np.multiply(ny, ty)
	nn = np.multiply(ny, tx) - np.multiply(nx, ty)
	up = u + half
	um = u - half
	rp = np.hypot(up, v)
	rm = np.hypot(um, v)
	theta = np.where(v == 0, 0.0, np.arctan2(v, um) - np.arctan2(v, up))
	with np.errstate(divide="ignore"):
		return nt * (np.log(rp) - np.log(rm)) + nn * theta


def log_potential_integral(obs: Point, seg: Segment) -> float:
	m = seg.midpoint
	tx, ty = seg.tangent
	return float(log_potential(obs.x, obs.y, m.x, m.y, tx, ty, 0.5 * seg.length))


def normal_field_integral(obs: Point, n: tuple[float, float], seg: Segment) -> float:
	m = seg.midpoint
	tx, ty = seg.tangent
	return float(normal_field(obs.x, obs.y, n[0], n[1], m.x, m.y, tx, ty, 0.5 * seg.length))

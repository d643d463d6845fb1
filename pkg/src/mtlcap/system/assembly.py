from __future__ import annotations

import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numpy.typing import NDArray

from ..config import RuntimeSettings
from ..exceptions import DimensionMismatchError
from ..geometry import Mesh
from ..kernel import log_potential, normal_field
from ..log import get_logger
from .types import EPS0, ChangeMask, SystemMatrix

INV_2PI_EPS0 = 1.0 / (2.0 * math.pi * EPS0)

logger = get_logger("mtlcap.system")


def jump_terms(mesh: Mesh) -> NDArray[np.float64]:
	"""Diagonal of dielectric rows: the normal-field discontinuity across the interface."""
	ep, en = mesh.eps_pos, mesh.eps_neg
	with np.errstate(divide="ignore", invalid="ignore"):
		return np.where(mesh.is_conductor, 0.0, -(en + ep) / (en - ep) / (2.0 * EPS0))


def entries(mesh: Mesh, rows: NDArray[np.int64], cols: NDArray[np.int64]) -> NDArray[np.float64]:
	"""
	System-matrix values for the flat index pairs ``(rows[k], cols[k])``.

	Each value depends only on its own pair, so full assembly and partial
	reassembly produce the same bits for the same segments.
	"""
	rows = np.asarray(rows, dtype=np.int64)
	cols = np.asarray(cols, dtype=np.int64)
	out = np.empty(rows.shape[0], dtype=np.float64)

	cond = mesh.is_conductor[rows]
	r, c = rows[cond], cols[cond]
	if r.size:
		out[cond] = -INV_2PI_EPS0 * log_potential(
			mesh.mx[r], mesh.my[r], mesh.mx[c], mesh.my[c], mesh.tx[c], mesh.ty[c], mesh.half[c]
		)

	diel = ~cond
	r, c = rows[diel], cols[diel]
	if r.size:
		vals = INV_2PI_EPS0 * normal_field(
			mesh.mx[r],
			mesh.my[r],
			mesh.nx[r],
			mesh.ny[r],
			mesh.mx[c],
			mesh.my[c],
			mesh.tx[c],
			mesh.ty[c],
			mesh.half[c],
		)
		self_ = r == c
		if self_.any():
			vals[self_] = jump_terms(mesh)[r[self_]]
		out[diel] = vals
	return out


def _resolve(threads: int | None, block_pairs: int | None) -> tuple[int, int]:
	if threads is None or block_pairs is None:
		settings = RuntimeSettings()
		threads = threads or settings.THREADS
		block_pairs = block_pairs or settings.BLOCK_PAIRS
	return max(1, threads), max(1, block_pairs)


def _run(jobs: list[Callable[[], None]], threads: int) -> None:
	if threads == 1 or len(jobs) <= 1:
		for job in jobs:
			job()
		return
	with ThreadPoolExecutor(max_workers=threads, thread_name_prefix="mtlcap-assemble") as pool:
		for fut in [pool.submit(job) for job in jobs]:
			fut.result()


def assemble(
	mesh: Mesh, threads: int | None = None, block_pairs: int | None = None
) -> SystemMatrix:
	"""Dense N x N system matrix, filled in independent row blocks."""
	threads, block_pairs = _resolve(threads, block_pairs)
	n = mesh.size
	S = np.empty((n, n), dtype=np.float64)
	step = max(1, block_pairs // n)
	cols = np.arange(n, dtype=np.int64)

	def fill(lo: int, hi: int) -> Callable[[], None]:
		def job() -> None:
			rows = np.repeat(np.arange(lo, hi, dtype=np.int64), n)
			S[lo:hi] = entries(mesh, rows, np.tile(cols, hi - lo)).reshape(hi - lo, n)

		return job

	_run([fill(lo, min(lo + step, n)) for lo in range(0, n, step)], threads)
	logger.debug("system assembled", n=n, threads=threads, rows_per_block=step)
	return SystemMatrix(S=S, row_map=np.arange(n, dtype=np.int64))


def partial_reassemble(
	base: SystemMatrix,
	mesh_new: Mesh,
	mask: ChangeMask,
	threads: int | None = None,
	block_pairs: int | None = None,
) -> SystemMatrix:
	"""Copy of ``base`` with only the masked entries recomputed on ``mesh_new``."""
	n = mesh_new.size
	if base.S.shape != (n, n) or mask.mask.shape != (n, n):
		raise DimensionMismatchError(
			"base matrix, mask and mesh disagree in size",
			ctx={"base": list(base.S.shape), "mask": list(mask.mask.shape), "n": n},
		)
	threads, block_pairs = _resolve(threads, block_pairs)
	S = base.S.copy()
	rows, cols = np.nonzero(mask.mask)

	def fill(lo: int, hi: int) -> Callable[[], None]:
		def job() -> None:
			r, c = rows[lo:hi], cols[lo:hi]
			S[r, c] = entries(mesh_new, r, c)

		return job

	_run([fill(lo, lo + block_pairs) for lo in range(0, rows.size, block_pairs)], threads)
	logger.debug("system reassembled", n=n, recomputed=int(rows.size))
	return SystemMatrix(S=S, row_map=base.row_map)


def diff_mask(a: SystemMatrix, b: SystemMatrix) -> ChangeMask:
	if a.S.shape != b.S.shape:
		raise DimensionMismatchError(
			"system matrices differ in shape",
			ctx={"a": list(a.S.shape), "b": list(b.S.shape)},
		)
	return ChangeMask(mask=a.S != b.S)

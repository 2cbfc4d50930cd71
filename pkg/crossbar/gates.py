"""
Compuertas MAGIC sobre columnas completas del crossbar.

MAGIC NOR en dos pasos: (1) inicializar la salida a '1', (2) evaluar. La
evaluación solo puede llevar la salida de 1 a 0, por eso el resultado es
out AND NOR(entradas); sin inicialización previa el resultado es incorrecto.
"""
from typing import Sequence as SeqType

import numpy as np

from crossbar.state import CrossbarState
from utils.errors import LayoutError


def exec_init(xb: CrossbarState, cols: SeqType[int]) -> None:
    """Inicializa a '1' todas las columnas dadas en un único ciclo."""
    cols = list(cols)
    if not cols:
        return
    ones = np.ones(xb.rows, dtype=bool)
    for col in cols:
        xb.drive(col, ones)
    xb.tick("INIT", cols)


def exec_nor(xb: CrossbarState, in_cols: SeqType[int], out_col: int, init: bool = True) -> None:
    """
    NOR de 1 a 3 entradas; con una entrada es un NOT.

    Args:
        init: si True se inicializa la salida en su propio ciclo (2 ciclos en
            total). El programa de búsqueda usa init=False y agrupa las
            inicializaciones con `exec_init`.

    Raises:
        LayoutError: salida entre las entradas o aridad inválida
    """
    in_cols = list(in_cols)
    if not 1 <= len(in_cols) <= 3:
        raise LayoutError(f"NOR admite 1 a 3 entradas, recibió {len(in_cols)}")
    if out_col in in_cols:
        raise LayoutError(f"Columna de salida {out_col} también es entrada")

    if init:
        exec_init(xb, [out_col])

    any_one = np.zeros(xb.rows, dtype=bool)
    for col in in_cols:
        any_one |= xb.column(col)
    xb.drive(out_col, xb.column(out_col) & ~any_one)
    xb.tick("NOR", out_col, in_cols)


def exec_xor(xb: CrossbarState, a_col: int, b_col: int, out_col: int,
             scratch_cols: SeqType[int], init: bool = True) -> None:
    """
    out = a XOR b = ((a'+b')' + (a+b)')' con cinco evaluaciones NOR.

    Raises:
        LayoutError: menos de 4 columnas de scratch o columnas repetidas
    """
    scratch = list(scratch_cols)
    if len(scratch) < 4:
        raise LayoutError(f"XOR necesita 4 columnas de scratch, recibió {len(scratch)}")
    not_a, not_b, and_ab, nor_ab = scratch[:4]
    used = [a_col, b_col, out_col, not_a, not_b, and_ab, nor_ab]
    if len(set(used)) != len(used):
        raise LayoutError(f"Columnas repetidas en XOR: {used}")

    if init:
        exec_init(xb, [not_a, not_b, and_ab, nor_ab, out_col])

    exec_nor(xb, [a_col], not_a, init=False)
    exec_nor(xb, [b_col], not_b, init=False)
    exec_nor(xb, [not_a, not_b], and_ab, init=False)
    exec_nor(xb, [a_col, b_col], nor_ab, init=False)
    exec_nor(xb, [and_ab, nor_ab], out_col, init=False)

"""
Funciones auxiliares
"""
import json
import os
from pathlib import Path
from typing import Any, Iterable, Sequence, Union

PathLike = Union[str, Path]


def ensure_dir(path: PathLike) -> Path:
    """Asegura que existe el directorio (y lo retorna como Path)"""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def ensure_parent(path: PathLike) -> Path:
    """Asegura que existe el directorio padre de un archivo de salida"""
    path = Path(path)
    if path.parent and not path.parent.exists():
        os.makedirs(path.parent, exist_ok=True)
    return path


def write_json(path: PathLike, payload: Any) -> Path:
    """Escribe JSON ordenado (salida reproducible byte a byte)"""
    path = ensure_parent(path)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True, ensure_ascii=False)
        f.write("\n")
    return path


def write_tsv(path: PathLike, header: Sequence[str], rows: Iterable[Sequence[Any]],
              sep: str = "\t") -> Path:
    """Escribe una tabla separada por tabs (o comas para CSV)"""
    path = ensure_parent(path)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(sep.join(header) + "\n")
        for row in rows:
            f.write(sep.join(str(x) for x in row) + "\n")
    return path

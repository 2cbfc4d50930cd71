"""
Persistencia del layout en un .npz comprimido con campo de versión.
"""
import json
import zipfile
from pathlib import Path
from typing import Union

import numpy as np

from database.builder import placements_from_crossbars
from database.models import CrossbarDescriptor, DatabaseLayout
from utils.errors import LoadError
from utils.helpers import ensure_parent
from utils.logger import setup_logger

logger = setup_logger(__name__)

LAYOUT_FORMAT_VERSION = 1
_REQUIRED = ("version", "k", "crossbar_rows", "species", "keys", "row_counts", "codes", "offsets", "names")


def persist_layout(layout: DatabaseLayout, path: Union[str, Path]) -> Path:
    path = ensure_parent(path)
    k = layout.k
    codes = layout.rows_of(np.arange(layout.crossbar_count)) if layout.crossbars else np.zeros((0, k), np.uint8)
    offsets = (np.concatenate([xb.offsets for xb in layout.crossbars])
               if layout.crossbars else np.zeros(0, np.int64))
    with open(path, "wb") as f:
        np.savez_compressed(
            f,
            version=np.int64(LAYOUT_FORMAT_VERSION),
            k=np.int64(k),
            crossbar_rows=np.int64(layout.crossbar_rows),
            species=layout.crossbar_species(),
            keys=np.array([xb.histogram_key for xb in layout.crossbars], dtype=np.int64),
            row_counts=np.array([xb.rows for xb in layout.crossbars], dtype=np.int64),
            codes=codes.astype(np.uint8),
            offsets=offsets.astype(np.int64),
            names=np.array(json.dumps({str(s): n for s, n in layout.species_names.items()}, sort_keys=True)),
        )
    logger.info(f"Layout saved: {path} ({layout.crossbar_count} crossbars)")
    return path


def load_layout(path: Union[str, Path]) -> DatabaseLayout:
    """
    Raises:
        LoadError: archivo ilegible, campos faltantes, versión distinta o
            contenido inconsistente
    """
    path = Path(path)
    try:
        with np.load(path, allow_pickle=False) as data:
            missing = [name for name in _REQUIRED if name not in data.files]
            if missing:
                raise LoadError(f"Layout sin campos {missing}: {path}")
            arrays = {name: data[name] for name in _REQUIRED}
    except LoadError:
        raise
    except (OSError, ValueError, zipfile.BadZipFile, EOFError) as e:
        raise LoadError(f"No se pudo leer el layout {path}: {e}") from e

    version = int(arrays["version"])
    if version != LAYOUT_FORMAT_VERSION:
        raise LoadError(f"Versión de layout {version} no soportada (se espera {LAYOUT_FORMAT_VERSION})")

    k = int(arrays["k"])
    row_counts = arrays["row_counts"]
    codes, offsets = arrays["codes"], arrays["offsets"]
    if codes.ndim != 2 or codes.shape[1] != k or row_counts.sum() != codes.shape[0] \
            or offsets.shape[0] != codes.shape[0] or arrays["species"].shape != row_counts.shape:
        raise LoadError(f"Layout inconsistente: {path}")

    starts = np.concatenate([[0], np.cumsum(row_counts)])
    crossbars = [
        CrossbarDescriptor(
            index=i,
            species_id=int(arrays["species"][i]),
            histogram_key=int(arrays["keys"][i]),
            codes=codes[starts[i]:starts[i + 1]],
            offsets=offsets[starts[i]:starts[i + 1]],
        )
        for i in range(row_counts.shape[0])
    ]
    names = {int(s): n for s, n in json.loads(str(arrays["names"])).items()}
    layout = DatabaseLayout(
        k=k,
        crossbar_rows=int(arrays["crossbar_rows"]),
        crossbars=crossbars,
        placements=placements_from_crossbars(crossbars),
        species_names=names,
    )
    logger.info(f"Layout loaded: {path} ({layout.crossbar_count} crossbars)")
    return layout

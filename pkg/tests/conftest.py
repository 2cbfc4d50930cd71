# Standard Library Imports
from pathlib import Path
from typing import List, Tuple

# Third-party Imports
import numpy as np
import pytest

# Project Imports
# Se asume que los tests corren desde la raíz del proyecto
try:
    from config.settings import SaMode
    from database.builder import build_layout
    from database.models import DatabaseLayout
    from matcher.models import SaModel
    from seq.models import Sequence
except ImportError as e:
    import sys
    project_root = Path(__file__).parent.parent
    sys.path.insert(0, str(project_root))
    try:
        from config.settings import SaMode
        from database.builder import build_layout
        from database.models import DatabaseLayout
        from matcher.models import SaModel
        from seq.models import Sequence
    except ImportError:
        print(f"ERROR: Could not import project modules. Ensure tests are run from project root. {e}")
        pytest.exit(f"Failed to import project modules: {e}", 1)


# --- Helper Functions ---

def random_codes(length: int, seed: int = 0) -> np.ndarray:
    """Códigos 0..3 uniformes y reproducibles."""
    return np.random.default_rng(seed).integers(0, 4, length, dtype=np.uint8)


def random_sequence(length: int, seed: int = 0) -> Sequence:
    """Factory de secuencias aleatorias para tests."""
    return Sequence.from_codes(random_codes(length, seed))


def make_sequence(text: str) -> Sequence:
    return Sequence.from_str(text)


def make_genomes(count: int, length: int, seed: int = 0) -> List[Tuple[int, Sequence]]:
    """[(species_id, genoma)] con genomas aleatorios independientes."""
    return [(sid, random_sequence(length, seed=seed * 1000 + sid)) for sid in range(count)]


def make_layout(count: int = 2, length: int = 400, k: int = 16, crossbar_rows: int = 128,
                seed: int = 0) -> DatabaseLayout:
    return build_layout(make_genomes(count, length, seed), k, crossbar_rows=crossbar_rows)


def ideal_sa(threshold: int = 0, seed: int = 0) -> SaModel:
    return SaModel(mode=SaMode.IDEAL, threshold=threshold, rng_seed=seed)


def stochastic_sa(threshold: int, table: dict, seed: int = 0) -> SaModel:
    return SaModel(mode=SaMode.STOCHASTIC, threshold=threshold, confidence_table=table, rng_seed=seed)


# --- Fixtures ---

@pytest.fixture
def small_genomes() -> List[Tuple[int, Sequence]]:
    """Dos especies de 400 bases."""
    return make_genomes(2, 400)


@pytest.fixture
def small_layout(small_genomes) -> DatabaseLayout:
    """Layout k=16 de las dos especies de `small_genomes`."""
    return build_layout(small_genomes, 16)


@pytest.fixture
def sa_exact() -> SaModel:
    """SA ideal con threshold 0 (solo coincidencias sin edits)."""
    return ideal_sa(0)


@pytest.fixture
def confidence_table() -> dict:
    """Serie de confianza pequeña y monótona para el threshold 2."""
    return {(2, 1): 1.0, (2, 2): 0.9, (2, 3): 0.4, (2, 4): 0.1, (2, 5): 0.0}


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: corridas a escala completa (pytest -m 'not slow' las omite)")

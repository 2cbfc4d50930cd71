"""
Generación de muestras metagenómicas sintéticas.

Cada read se toma de una posición uniforme del genoma, con una ventana más
larga que read_len; se le inyectan errores y se recorta a read_len, así las
deleciones no acortan el read final.

Eventos por base, con una única muestra uniforme u por base:
    u < del                     deleción
    u < del + ins               inserción de una base aleatoria antes de la base
    u < del + ins + sub         sustitución por una base distinta
    resto                       sin cambio
"""
import math
import re
from pathlib import Path
from typing import List, NamedTuple, Optional, Sequence as SeqType, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from readgen.profiles import ZERO, ErrorProfile
from seq.fasta import parse_fasta, write_fasta
from seq.models import Sequence
from utils.errors import TooShort
from utils.logger import setup_logger

logger = setup_logger(__name__)

_LABEL = re.compile(r"^read_(\d+)\|species=(\d+)\|pos=(\d+)$")


class SyntheticRead(BaseModel):
    model_config = ConfigDict(frozen=True)

    read_index: int = Field(ge=0)
    sequence: Sequence
    truth_species: int = Field(ge=0)
    origin_offset: int = Field(ge=0)

    @property
    def read_id(self) -> str:
        return f"read_{self.read_index}|species={self.truth_species}|pos={self.origin_offset}"


class ReadLabel(NamedTuple):
    index: int
    species: int
    pos: int


def parse_read_label(name: str) -> Optional[ReadLabel]:
    """Recupera (n, species, pos) de `read_<n>|species=<id>|pos=<p>`; None si no coincide."""
    match = _LABEL.match(name)
    if not match:
        return None
    return ReadLabel(*(int(g) for g in match.groups()))


def _inject_codes(codes: np.ndarray, profile: ErrorProfile, rng: np.random.Generator) -> np.ndarray:
    n = codes.shape[0]
    u = rng.random(n)
    inserted = rng.integers(0, 4, n, dtype=np.uint8)
    shift = rng.integers(1, 4, n, dtype=np.uint8)

    d = profile.deletion_rate
    i = d + profile.insertion_rate
    s = i + profile.substitution_rate
    deleted = u < d
    insert = (u >= d) & (u < i)
    substitute = (u >= i) & (u < s)

    bases = np.where(substitute, (codes + shift) % 4, codes).astype(np.uint8)
    pairs = np.stack([inserted, bases], axis=1)
    keep = np.stack([insert, ~deleted], axis=1)
    return pairs[keep]


def inject_errors(seq: Sequence, profile: ErrorProfile, seed: Union[int, np.random.Generator] = 0,
                  target_len: Optional[int] = None,
                  context: Optional[np.ndarray] = None) -> Sequence:
    """
    Inyecta sustituciones, inserciones y deleciones independientes por base.

    Args:
        seed: semilla o Generator ya construido
        target_len: si se da, el resultado se recorta o se extiende a ese largo
        context: bases (códigos) que siguen a `seq` en el genoma, usadas para
            extender cuando las deleciones dejan el read corto
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    out = _inject_codes(seq.codes, profile, rng)
    if target_len is not None:
        out = _fit_length(out, target_len, context, rng)
    return Sequence.from_codes(out)


def _fit_length(codes: np.ndarray, target_len: int, context: Optional[np.ndarray],
                rng: np.random.Generator) -> np.ndarray:
    if codes.shape[0] >= target_len:
        return codes[:target_len]
    need = target_len - codes.shape[0]
    tail = context[:need] if context is not None else np.zeros(0, dtype=np.uint8)
    codes = np.concatenate([codes, tail]).astype(np.uint8)
    if codes.shape[0] < target_len:
        filler = rng.integers(0, 4, target_len - codes.shape[0], dtype=np.uint8)
        codes = np.concatenate([codes, filler])
    return codes


def generate_sample(
    genomes: SeqType[Tuple[int, Sequence]],
    reads_per_genome: int,
    read_len: int = 64,
    profile: Optional[ErrorProfile] = None,
    seed: int = 0,
) -> List[SyntheticRead]:
    """
    `reads_per_genome` reads por genoma desde posiciones uniformes. Cada genoma
    usa un generador derivado de (seed, índice del genoma).

    Raises:
        TooShort: genoma más corto que read_len
    """
    profile = profile or ZERO
    margin = max(8, math.ceil(4 * read_len * profile.deletion_rate))
    reads: List[SyntheticRead] = []

    for genome_index, (species_id, genome) in enumerate(genomes):
        if genome.length < read_len:
            raise TooShort(f"Genoma de especie {species_id} ({genome.length} bases) < read_len={read_len}")
        rng = np.random.default_rng([seed, genome_index])
        codes = genome.codes
        starts = rng.integers(0, genome.length - read_len + 1, reads_per_genome)
        for start in starts:
            start = int(start)
            stop = min(start + read_len + margin, genome.length)
            window = Sequence.from_codes(codes[start:stop])
            injected = inject_errors(window, profile, rng, target_len=read_len, context=codes[stop:])
            reads.append(SyntheticRead(
                read_index=len(reads),
                sequence=injected,
                truth_species=species_id,
                origin_offset=start,
            ))

    logger.info(f"Generated {len(reads)} reads from {len(genomes)} genomes (profile={profile.name}, seed={seed})")
    return reads


def random_genome(length: int, seed: int = 0, segment_len: Optional[int] = None,
                  drift: float = 0.0) -> Sequence:
    """
    Genoma aleatorio. Con `drift` > 0 la composición de bases cambia por
    segmentos de `segment_len`: mezcla de uniforme y una composición Dirichlet.
    """
    rng = np.random.default_rng(seed)
    if drift <= 0.0:
        return Sequence.from_codes(rng.integers(0, 4, length, dtype=np.uint8))

    segment_len = segment_len or max(1, length // 16)
    parts = []
    for start in range(0, length, segment_len):
        size = min(segment_len, length - start)
        probs = (1.0 - drift) * np.full(4, 0.25) + drift * rng.dirichlet(np.ones(4))
        parts.append(rng.choice(4, size=size, p=probs).astype(np.uint8))
    return Sequence.from_codes(np.concatenate(parts))


def write_reads_fasta(reads: SeqType[SyntheticRead], path: Union[str, Path]) -> Path:
    return write_fasta(((r.read_id, r.sequence) for r in reads), path)


def read_reads_fasta(path: Union[str, Path]) -> List[Tuple[str, Sequence, Optional[int]]]:
    """(read_id, secuencia, especie verdadera o None si el nombre no trae etiqueta)."""
    out = []
    for name, seq in parse_fasta(path):
        label = parse_read_label(name)
        out.append((name, seq, label.species if label else None))
    return out

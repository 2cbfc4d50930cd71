"""
Lectura y escritura de FASTA (multi-registro, líneas partidas).

Códigos IUPAC de ambigüedad se aceptan pero se enmascaran: la posición queda
con una base placeholder ('A') y se registra en `Sequence.masked_spans`, de modo
que la extracción de k-mers salta toda ventana que la toque.
"""
import re
from pathlib import Path
from typing import Iterable, List, Tuple, Union

from seq.models import Sequence
from utils.errors import ParseError
from utils.helpers import ensure_parent
from utils.logger import setup_logger

logger = setup_logger(__name__)

IUPAC_AMBIGUOUS = frozenset("NRYKMSWBDHV-")
_VALID = frozenset("ACGT") | IUPAC_AMBIGUOUS
_AMBIGUOUS_RUN = re.compile(r"[^ACGT]+")

FastaRecord = Tuple[str, Sequence]


def parse_fasta(path: Union[str, Path]) -> List[FastaRecord]:
    """
    Parsea un FASTA en [(nombre, Sequence), ...].

    El nombre es el primer token del header (sin '>').

    Raises:
        ParseError: archivo vacío, secuencia antes del primer header, header sin
            nombre, registro sin bases o símbolo no IUPAC (con número de línea)
        FileNotFoundError: si el archivo no existe
    """
    path = Path(path)
    logger.debug(f"Parsing FASTA: {path}")

    records: List[FastaRecord] = []
    name = None
    header_line = 0
    chunks: List[str] = []

    def flush():
        if name is None:
            return
        if not chunks:
            raise ParseError(f"Registro '{name}' sin secuencia", line=header_line)
        records.append((name, _build_sequence(name, "".join(chunks))))

    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith(";"):
                continue
            if line.startswith(">"):
                flush()
                tokens = line[1:].split()
                if not tokens:
                    raise ParseError("Header sin nombre", line=lineno)
                name, header_line, chunks = tokens[0], lineno, []
                continue
            if name is None:
                raise ParseError("Secuencia antes del primer header", line=lineno)
            upper = line.upper()
            bad = set(upper) - _VALID
            if bad:
                raise ParseError(f"Símbolos no válidos {sorted(bad)}", line=lineno)
            chunks.append(upper)
    flush()

    if not records:
        raise ParseError(f"FASTA vacío: {path}", line=0)

    logger.info(f"Parsed {len(records)} FASTA records from {path}")
    return records


def _build_sequence(name: str, text: str) -> Sequence:
    spans = tuple((m.start(), m.end()) for m in _AMBIGUOUS_RUN.finditer(text))
    if not spans:
        return Sequence(bases=text)
    masked = sum(end - start for start, end in spans)
    logger.warning(f"Record '{name}': {masked} ambiguous positions masked in {len(spans)} runs")
    cleaned = _AMBIGUOUS_RUN.sub(lambda m: "A" * (m.end() - m.start()), text)
    return Sequence(bases=cleaned, masked_spans=spans)


def write_fasta(records: Iterable[Tuple[str, Union[Sequence, str]]], path: Union[str, Path],
                line_width: int = 60) -> Path:
    """Escribe registros FASTA con líneas de `line_width` bases."""
    path = ensure_parent(path)
    with open(path, "w", encoding="utf-8") as f:
        for name, seq in records:
            text = seq.bases if isinstance(seq, Sequence) else str(seq)
            f.write(f">{name}\n")
            for i in range(0, len(text), line_width):
                f.write(text[i:i + line_width] + "\n")
    return path

"""
Jerarquía de excepciones y mapeo a mensajes / códigos de salida del CLI.

Las librerías (seq, crossbar, filtering, ...) solo lanzan; el único lugar que
convierte excepciones en códigos de salida es `handle_error`, usado por main.py.
"""
from typing import Optional, Tuple

from utils.logger import setup_logger

logger = setup_logger(__name__)

# Códigos de salida del CLI
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class PimclassError(Exception):
    """Error base del proyecto."""

    exit_code = EXIT_INTERNAL


# ════════════════════════════════════════════════════════════════════════
# ERRORES DE DATOS (exit 2)
# ════════════════════════════════════════════════════════════════════════

class InvalidBase(PimclassError, ValueError):
    """Símbolo fuera de {A, C, G, T}."""

    exit_code = EXIT_DATA


class KeyOverflow(PimclassError, ValueError):
    """Un conteo del histograma no cabe en 6 bits."""

    exit_code = EXIT_DATA


class ParseError(PimclassError, ValueError):
    """FASTA mal formado. Conserva el número de línea."""

    exit_code = EXIT_DATA

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"{message} (línea {line})"
        super().__init__(message)


class LengthError(PimclassError, ValueError):
    exit_code = EXIT_DATA


class TooShort(PimclassError, ValueError):
    exit_code = EXIT_DATA


class LoadError(PimclassError, ValueError):
    """Archivo persistido con versión incorrecta o corrupto."""

    exit_code = EXIT_DATA


class CapacityError(PimclassError, ValueError):
    exit_code = EXIT_DATA


class EmptyCrossbar(PimclassError, RuntimeError):
    exit_code = EXIT_DATA


# ════════════════════════════════════════════════════════════════════════
# ERRORES DE USO (exit 1)
# ════════════════════════════════════════════════════════════════════════

class ConfigError(PimclassError, ValueError):
    exit_code = EXIT_USAGE


# ════════════════════════════════════════════════════════════════════════
# ERRORES INTERNOS (exit 3)
# ════════════════════════════════════════════════════════════════════════

class LayoutError(PimclassError, ValueError):
    """Columnas del crossbar en conflicto o insuficientes."""

    exit_code = EXIT_INTERNAL


class BuildError(PimclassError, ValueError):
    exit_code = EXIT_INTERNAL


class InvariantViolation(PimclassError, AssertionError):
    exit_code = EXIT_INTERNAL


# ════════════════════════════════════════════════════════════════════════
# MAPEO DE ERRORES TÉCNICOS A MENSAJES PARA EL USUARIO
# ════════════════════════════════════════════════════════════════════════
# El orden importa: clases específicas primero, genéricas después.
# ════════════════════════════════════════════════════════════════════════

ERROR_MESSAGE_MAP = {
    ParseError: "The FASTA input could not be parsed.",
    InvalidBase: "The input contains a symbol outside A/C/G/T.",
    TooShort: "A sequence is shorter than the configured k.",
    LengthError: "Sequence lengths do not match the configured k.",
    KeyOverflow: "A base-count histogram does not fit the 18-bit key.",
    LoadError: "A persisted layout or tracing table could not be loaded.",
    CapacityError: "Too many k-mers for a single crossbar.",
    EmptyCrossbar: "The crossbar has no k-mers loaded.",
    ConfigError: "Invalid configuration.",
    LayoutError: "Internal error: crossbar column layout conflict.",
    BuildError: "Internal error while building the tracing table.",
    InvariantViolation: "Internal invariant violated.",
    FileNotFoundError: "Input file not found.",
}

DEFAULT_ERROR_MESSAGE = "Unexpected error."


def handle_error(exc: BaseException, step: str = "unknown") -> Tuple[int, str]:
    """
    Convierte una excepción en (exit_code, mensaje para el usuario).

    Loguea el detalle técnico. No lanza nunca: es el último recurso del CLI.

    Args:
        exc: excepción capturada
        step: subcomando o etapa donde ocurrió

    Returns:
        (exit_code, mensaje)
    """
    logger.error(f"Error captured in step '{step}': {type(exc).__name__}: {exc}")

    message = DEFAULT_ERROR_MESSAGE
    for exc_type, friendly in ERROR_MESSAGE_MAP.items():
        if isinstance(exc, exc_type):
            message = friendly
            break
    else:
        logger.debug(f"No specific map found for {type(exc).__name__}. Using default.")

    if isinstance(exc, PimclassError):
        code = exc.exit_code
    elif isinstance(exc, (FileNotFoundError, UnicodeDecodeError)):
        code = EXIT_DATA
    else:
        code = EXIT_INTERNAL
        logger.exception("Unhandled exception", exc_info=exc)

    return code, f"{message} {exc} (step '{step}')"


__all__ = [
    "PimclassError",
    "InvalidBase",
    "KeyOverflow",
    "ParseError",
    "LengthError",
    "TooShort",
    "LoadError",
    "CapacityError",
    "EmptyCrossbar",
    "ConfigError",
    "LayoutError",
    "BuildError",
    "InvariantViolation",
    "handle_error",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_DATA",
    "EXIT_INTERNAL",
]

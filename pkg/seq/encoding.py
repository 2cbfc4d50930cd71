"""
Codificación de bases a 2 bits: A=00, T=01, G=10, C=11.
"""
from seq.models import ALPHABET, Base
from utils.errors import InvalidBase


def encode_base(symbol: str) -> int:
    """
    Código de 2 bits de una base (case-insensitive).

    Raises:
        InvalidBase: si el símbolo no es A, C, G ni T
    """
    if not isinstance(symbol, str) or len(symbol) != 1:
        raise InvalidBase(f"Se esperaba un único símbolo, recibido: {symbol!r}")
    idx = ALPHABET.find(symbol.upper())
    if idx < 0:
        raise InvalidBase(f"Base inválida: {symbol!r}")
    return idx


def decode_base(code: int) -> Base:
    if not 0 <= code <= 3:
        raise InvalidBase(f"Código de base fuera de rango: {code}")
    return Base.from_code(code)


def code_bits(code: int) -> tuple:
    """(bit alto, bit bajo) del código, en el orden en que se guardan en el crossbar."""
    return (code >> 1) & 1, code & 1

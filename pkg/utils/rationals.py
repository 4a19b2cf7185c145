# utils/rationals.py

from fractions import Fraction


def parse_rational(text) -> Fraction:
    """
    Parses an exact rational written as "p/q" (or an integer).

    Args:
        text (str | int): The rational, e.g. "-3/4", "2" or 5.

    Returns:
        Fraction: The reduced rational.
    """
    if isinstance(text, bool):
        raise ValueError(f"Invalid rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    try:
        value = str(text).strip()
        if "." in value or "e" in value.lower():
            raise ValueError("decimal notation is not exact")
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Invalid rational: {text!r}. Error: {str(e)}")


def format_rational(value: Fraction) -> str:
    """Formats a rational as "p/q", or "p" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"

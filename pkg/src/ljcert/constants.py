"""Published reference values, used only to flag agreement in reports.

Nothing in the computation reads from this table.
"""
CONSTANTS_VERSION = 1

# (alpha, beta) -> (y_bar as printed, M as printed)
PUBLISHED = {
    (12, 6): ("7.52", 181),
    (14, 6): ("5.23", 95),
    (16, 6): ("4.18", 72),
    (18, 6): ("3.60", 50),
    (20, 6): ("3.22", 39),
    (22, 6): ("2.97", 34),
    (24, 6): ("2.77", 33),
}

TABLE_PAIRS = [(14, 6), (16, 6), (18, 6), (20, 6), (22, 6), (24, 6)]
EXTRA_PAIR = (12, 6)

PUBLISHED_N = 40
PUBLISHED_DELTA = 0.01
PUBLISHED_MARGIN_12_6 = 1.28  # M delta sqrt(2)/2 for (12, 6)
PUBLISHED_J_12_6 = 666
PUBLISHED_I_12_6 = 50  # counted without one endpoint


def published(alpha, beta):
    """``(y_bar, M)`` for a published pair or ``None``."""
    key = (int(alpha), int(beta)) if float(alpha).is_integer() and float(beta).is_integer() else None
    return PUBLISHED.get(key)

# etech/core/banner.py
"""Banner shown by the etech command line."""

import functools
import logging
import os

logger = logging.getLogger(__name__)

TAGLINE = "event-triggered transmission under unknown energy harvesting"


@functools.lru_cache(maxsize=1)
def get_banner() -> str:
    """Get the banner art followed by the tagline.

    Returns:
        str: The banner, or just the tagline if the art cannot be read
    """
    banner_path = os.path.join(os.path.dirname(__file__), "banner.txt")
    try:
        with open(banner_path, "r", encoding="utf-8") as f:
            art = f.read().rstrip("\n")
    except OSError as e:
        logger.error("Failed to load banner: %s", e)
        return TAGLINE
    return f"{art}\n  {TAGLINE}"

"""Naming conventions: word splitting, CamelCase normalization, key prefixes.

The validator uses these helpers to detect naming violations and the fixer
uses the same helpers to repair them, so a repaired name always passes the
check it was repaired for.
"""

import logging
import re
import string
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Collection, FrozenSet, List, Optional

from .model import EntityType

logger = logging.getLogger(__name__)

# Shortest prefix length taken from an entity name for its key attribute
MIN_PREFIX_LENGTH = 3

# Upper-case run before a capitalized word, a capitalized word, or a bare run
_WORD = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+")
_LETTERS = frozenset(string.ascii_letters)


def split_words(name: str) -> List[str]:
    """Split a name into words.

    Symbols, digits and whitespace separate words and are dropped; inside a
    run of letters a lower-to-upper transition starts a new word, and an
    upper-case run followed by a capitalized word is its own word
    (``HTTPServer`` -> ``HTTP``, ``Server``).

    Args:
        name: Any name.

    Returns:
        List[str]: The words, in order.
    """
    return _WORD.findall(name)


def _recase(word: str) -> str:
    return word[0].upper() + word[1:].lower()


def forbidden_characters(name: str) -> List[str]:
    """Characters other than letters and whitespace, deduplicated in order."""
    seen: List[str] = []
    for ch in name:
        if ch not in _LETTERS and not ch.isspace() and ch not in seen:
            seen.append(ch)
    return seen


def has_whitespace(name: str) -> bool:
    return any(ch.isspace() for ch in name)


def is_camel_case(name: str) -> bool:
    """Check that every word is a capital letter followed by lower case.

    Only the letters of the name are judged; symbols and spaces are the
    business of the other naming rules.
    """
    return all(word == _recase(word) for word in split_words(name))


def normalize_name(name: str) -> str:
    """Rewrite a name into letters-only CamelCase.

    Splits into words, re-cases each word to Capital+lowercase and
    concatenates. Repeats until stable, because adjacent one-letter words
    merge into a run when concatenated (``a_b`` -> ``AB`` -> ``Ab``).

    Args:
        name: Any name.

    Returns:
        str: The normalized name; empty if the name has no letters.
    """
    current = name
    while True:
        words = split_words(current)
        normalized = "".join(_recase(w) for w in words)
        if normalized == current:
            return normalized
        current = normalized


def compute_prefix(entity_name: str, all_regular_names: Collection[str]) -> str:
    """Compute the key prefix for a regular entity type.

    Takes the first 3 letters of the entity name and grows the prefix one
    letter at a time until no other name in the pool starts with it. When
    no proper prefix is unique (the name is shorter than 3 letters, or it
    is itself a prefix of another name) the whole name is used.

    Args:
        entity_name: Name of the entity, a member of the pool.
        all_regular_names: Names of all regular non-subtype entity types.

    Returns:
        str: The shortest unique prefix of length >= 3, or the whole name.
    """
    others = [n for n in all_regular_names if n != entity_name]
    for length in range(MIN_PREFIX_LENGTH, len(entity_name) + 1):
        prefix = entity_name[:length]
        if not any(other.startswith(prefix) for other in others):
            return prefix
    return entity_name


def _base_name(key_name: str, entity_name: str, prefix: str) -> str:
    if key_name.startswith(prefix):
        return key_name[len(prefix) :]
    # A shorter prefix left over from a smaller pool, ending on a word boundary
    for length in range(len(prefix) - 1, MIN_PREFIX_LENGTH - 1, -1):
        stale = entity_name[:length]
        if (
            key_name.startswith(stale)
            and len(key_name) > length
            and key_name[length].isupper()
        ):
            return key_name[length:]
    return key_name


def expected_key_name(entity: EntityType, all_regular_names: Collection[str]) -> str:
    """Return the name the designated key of an entity should carry.

    Args:
        entity: A regular, non-subtype entity with at least one key.
        all_regular_names: Names of all regular non-subtype entity types.

    Returns:
        str: Prefix plus the key's base name. Equal to the current name
            when the key already starts with the prefix.
    """
    key = entity.designated_key
    assert key is not None, f"entity {entity.name!r} has no key"
    prefix = compute_prefix(entity.name, all_regular_names)
    return prefix + _base_name(key.name, entity.name, prefix)


def key_has_prefix(entity: EntityType, all_regular_names: Collection[str]) -> bool:
    """True when the designated key starts with the entity's key prefix."""
    key = entity.designated_key
    if key is None:
        return True
    return key.name.startswith(compute_prefix(entity.name, all_regular_names))


def load_plural_exceptions(path: Optional[Path] = None) -> FrozenSet[str]:
    """Load the singular-noun exception list.

    Args:
        path: A plain-text word list, one word per line, ``#`` comments
            allowed. The shipped list is used when None.

    Returns:
        FrozenSet[str]: Lower-cased words.

    Raises:
        OSError: If ``path`` cannot be read.
    """
    if path is None:
        return _default_plural_exceptions()
    text = Path(path).read_text(encoding="utf-8")
    words = _parse_word_list(text)
    logger.info(f"Loaded {len(words)} plural exceptions from '{path}'")
    return words


@lru_cache(maxsize=1)
def _default_plural_exceptions() -> FrozenSet[str]:
    text = (
        resources.files("src")
        .joinpath("data/plural_exceptions.txt")
        .read_text(encoding="utf-8")
    )
    return _parse_word_list(text)


def _parse_word_list(text: str) -> FrozenSet[str]:
    words = set()
    for line in text.splitlines():
        word = line.split("#", 1)[0].strip()
        if word:
            words.add(word.lower())
    return frozenset(words)


def check_singular_heuristic(
    name: str, exceptions: Optional[FrozenSet[str]] = None
) -> bool:
    """Guess whether a name ends in a plural noun.

    Args:
        name: A CamelCase name.
        exceptions: Singular words ending in "s"; the shipped list when None.

    Returns:
        bool: True when the last word ends in "s" and is not an exception.
    """
    words = split_words(name)
    if not words:
        return False
    last = words[-1].lower()
    if exceptions is None:
        exceptions = _default_plural_exceptions()
    return last.endswith("s") and last not in exceptions

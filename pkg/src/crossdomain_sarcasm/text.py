"""Tokenization and token normalization shared by features and the n-gram store."""
import string
import unicodedata

_ASCII_PUNCT = frozenset(string.punctuation)


def is_punct_char(ch):
    return ch in _ASCII_PUNCT or unicodedata.category(ch).startswith("P")


def is_punct_token(token):
    return bool(token) and all(is_punct_char(c) for c in token)


def _is_word_char(ch):
    return ch.isalnum() or ch == "_"


def is_hashtag(token):
    return len(token) > 1 and token[0] == "#" and _is_word_char(token[1])


def is_mention(token):
    return len(token) > 1 and token[0] == "@" and _is_word_char(token[1])


def tokenize(text):
    """Split on whitespace, then peel leading and trailing punctuation runs off each chunk.

    Case is preserved. Hashtags and @-mentions keep their sigil; a chunk made
    only of punctuation (``"..."``, ``":)"``) stays one token.

    >>> tokenize("Great, just great!")
    ['Great', ',', 'just', 'great', '!']
    """
    tokens = []
    for chunk in text.split():
        if is_punct_token(chunk):
            tokens.append(chunk)
            continue
        start = 0
        if not (is_hashtag(chunk) or is_mention(chunk)):
            while is_punct_char(chunk[start]):
                start += 1
        end = len(chunk)
        while end > start and is_punct_char(chunk[end - 1]):
            end -= 1
        if start:
            tokens.append(chunk[:start])
        tokens.append(chunk[start:end])
        if end < len(chunk):
            tokens.append(chunk[end:])
    return tokens


def strip_punct(token):
    start, end = 0, len(token)
    while start < end and is_punct_char(token[start]):
        start += 1
    while end > start and is_punct_char(token[end - 1]):
        end -= 1
    return token[start:end]


def lexicon_key(token):
    """Lowercased, punctuation-stripped form used for lexicon lookups, or None.

    Pure punctuation and @-mentions never match a lexicon entry.
    """
    if is_mention(token):
        return None
    key = strip_punct(token).lower()
    return key or None


def ngram_token(token):
    """Form of a token as stored in (and queried against) the n-gram store."""
    token = token.lower()
    if is_hashtag(token):
        return token[1:]
    return token

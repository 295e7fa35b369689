"""Snowball-family stemmers for title matching and span content comparison.

Implements the English (Porter2), German, and French Snowball algorithms;
every other language code falls back to lowercased identity, which degrades
phrase comparison to surface matching. Results are memoized per language
because corpus tokens repeat heavily.
"""

from __future__ import annotations

__all__ = ["stem", "stem_phrase", "supported_languages"]


# ---------------------------------------------------------------------------
# English (Porter2)

_EN_VOWELS = "aeiouy"
_EN_DOUBLES = ("bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt")
_EN_LI_VALID = "cdeghkmnrt"

_EN_EXCEPTIONS = {
    "skis": "ski",
    "skies": "sky",
    "dying": "die",
    "lying": "lie",
    "tying": "tie",
    "idly": "idl",
    "gently": "gentl",
    "ugly": "ugli",
    "early": "earli",
    "only": "onli",
    "singly": "singl",
    "sky": "sky",
    "news": "news",
    "howe": "howe",
    "atlas": "atlas",
    "cosmos": "cosmos",
    "bias": "bias",
    "andes": "andes",
}

_EN_INVARIANT_AFTER_1A = frozenset(
    ["inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed"]
)

# (suffix, replacement); longest first. None replacement means conditional.
_EN_STEP2 = [
    ("ization", "ize"),
    ("ational", "ate"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("iveness", "ive"),
    ("tional", "tion"),
    ("biliti", "ble"),
    ("lessli", "less"),
    ("entli", "ent"),
    ("ation", "ate"),
    ("alism", "al"),
    ("aliti", "al"),
    ("ousli", "ous"),
    ("iviti", "ive"),
    ("fulli", "ful"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("abli", "able"),
    ("izer", "ize"),
    ("ator", "ate"),
    ("alli", "al"),
    ("bli", "ble"),
    ("ogi", "og"),
    ("li", ""),
]

_EN_STEP3 = [
    ("ational", "ate"),
    ("tional", "tion"),
    ("alize", "al"),
    ("icate", "ic"),
    ("iciti", "ic"),
    ("ative", ""),
    ("ical", "ic"),
    ("ness", ""),
    ("ful", ""),
]

_EN_STEP4 = [
    "ement",
    "ance",
    "ence",
    "able",
    "ible",
    "ment",
    "ant",
    "ent",
    "ism",
    "ate",
    "iti",
    "ous",
    "ive",
    "ize",
    "ion",
    "al",
    "er",
    "ic",
]


def _en_is_vowel(ch: str) -> bool:
    return ch in _EN_VOWELS


def _en_regions(word: str) -> tuple[int, int]:
    for prefix in ("gener", "commun", "arsen"):
        if word.startswith(prefix):
            r1 = len(prefix)
            break
    else:
        r1 = len(word)
        for i in range(1, len(word)):
            if not _en_is_vowel(word[i]) and _en_is_vowel(word[i - 1]):
                r1 = i + 1
                break
    r2 = len(word)
    for i in range(r1 + 1, len(word)):
        if not _en_is_vowel(word[i]) and _en_is_vowel(word[i - 1]):
            r2 = i + 1
            break
    return r1, r2


def _en_ends_short_syllable(word: str) -> bool:
    if len(word) == 2:
        return _en_is_vowel(word[0]) and not _en_is_vowel(word[1])
    if len(word) >= 3:
        return (
            not _en_is_vowel(word[-3])
            and _en_is_vowel(word[-2])
            and not _en_is_vowel(word[-1])
            and word[-1] not in "wxY"
        )
    return False


def _en_stem(word: str) -> str:
    if len(word) <= 2:
        return word
    if word[0] == "'":
        word = word[1:]
    if word in _EN_EXCEPTIONS:
        return _EN_EXCEPTIONS[word]
    if len(word) <= 2:
        return word

    if word[0] == "y":
        word = "Y" + word[1:]
    chars = list(word)
    for i in range(1, len(chars)):
        if chars[i] == "y" and _en_is_vowel(chars[i - 1]):
            chars[i] = "Y"
    word = "".join(chars)

    r1, r2 = _en_regions(word)

    def in_r1(suffix: str) -> bool:
        return len(word) - len(suffix) >= r1

    def in_r2(suffix: str) -> bool:
        return len(word) - len(suffix) >= r2

    # step 0
    for suffix in ("'s'", "'s", "'"):
        if word.endswith(suffix):
            word = word[: -len(suffix)]
            break

    # step 1a
    if word.endswith("sses"):
        word = word[:-2]
    elif word.endswith("ied") or word.endswith("ies"):
        word = word[:-3] + ("i" if len(word) > 4 else "ie")
    elif word.endswith("us") or word.endswith("ss"):
        pass
    elif word.endswith("s"):
        if any(_en_is_vowel(c) for c in word[:-2]):
            word = word[:-1]

    if word in _EN_INVARIANT_AFTER_1A:
        return word

    # step 1b
    if word.endswith("eedly"):
        if in_r1("eedly"):
            word = word[:-3]
    elif word.endswith("eed"):
        if in_r1("eed"):
            word = word[:-1]
    else:
        for suffix in ("ingly", "edly", "ing", "ed"):
            if word.endswith(suffix):
                stem_part = word[: -len(suffix)]
                if any(_en_is_vowel(c) for c in stem_part):
                    word = stem_part
                    if word.endswith(("at", "bl", "iz")):
                        word += "e"
                    elif word.endswith(_EN_DOUBLES):
                        word = word[:-1]
                    elif _en_ends_short_syllable(word) and r1 >= len(word):
                        word += "e"
                break

    # step 1c
    if len(word) > 2 and word[-1] in "yY" and not _en_is_vowel(word[-2]):
        word = word[:-1] + "i"

    # step 2
    for suffix, repl in _EN_STEP2:
        if word.endswith(suffix):
            if in_r1(suffix):
                if suffix == "ogi":
                    if word.endswith("logi"):
                        word = word[:-1]
                elif suffix == "li":
                    if len(word) > 2 and word[-3] in _EN_LI_VALID:
                        word = word[:-2]
                else:
                    word = word[: -len(suffix)] + repl
            break

    # step 3
    for suffix, repl in _EN_STEP3:
        if word.endswith(suffix):
            if in_r1(suffix):
                if suffix == "ative":
                    if in_r2(suffix):
                        word = word[:-5]
                else:
                    word = word[: -len(suffix)] + repl
            break

    # step 4
    for suffix in _EN_STEP4:
        if word.endswith(suffix):
            if in_r2(suffix):
                if suffix == "ion":
                    if len(word) > 3 and word[-4] in "st":
                        word = word[:-3]
                else:
                    word = word[: -len(suffix)]
            break

    # step 5
    if word.endswith("e"):
        if in_r2("e") or (in_r1("e") and not _en_ends_short_syllable(word[:-1])):
            word = word[:-1]
    elif word.endswith("l") and in_r2("l") and len(word) > 1 and word[-2] == "l":
        word = word[:-1]

    return word.replace("Y", "y")


# ---------------------------------------------------------------------------
# German

_DE_VOWELS = "aeiouyäöü"
_DE_S_ENDING = "bdfghklmnrt"
_DE_ST_ENDING = "bdfghklmnt"
_DE_STEP1 = ("ern", "em", "er", "en", "es", "e", "s")
_DE_STEP2 = ("est", "en", "er", "st")
_DE_STEP3 = ("lich", "heit", "isch", "keit", "end", "ung", "ig", "ik")


def _de_regions(word: str) -> tuple[int, int]:
    r1 = len(word)
    for i in range(1, len(word)):
        if word[i] not in _DE_VOWELS and word[i - 1] in _DE_VOWELS:
            r1 = i + 1
            break
    r2 = len(word)
    for i in range(r1 + 1, len(word)):
        if word[i] not in _DE_VOWELS and word[i - 1] in _DE_VOWELS:
            r2 = i + 1
            break
    # region before R1 must hold at least 3 letters
    r1 = max(r1, min(3, len(word)))
    return r1, r2


def _de_stem(word: str) -> str:
    word = word.replace("ß", "ss")
    chars = list(word)
    for i in range(1, len(chars) - 1):
        if chars[i] == "u" and word[i - 1] in _DE_VOWELS and word[i + 1] in _DE_VOWELS:
            chars[i] = "U"
        elif chars[i] == "y" and word[i - 1] in _DE_VOWELS and word[i + 1] in _DE_VOWELS:
            chars[i] = "Y"
    word = "".join(chars)

    r1, r2 = _de_regions(word)

    def in_r1(suffix: str) -> bool:
        return len(word) - len(suffix) >= r1

    def in_r2(suffix: str) -> bool:
        return len(word) - len(suffix) >= r2

    # step 1
    for suffix in _DE_STEP1:
        if word.endswith(suffix):
            if suffix in ("ern", "em", "er"):
                if in_r1(suffix):
                    word = word[: -len(suffix)]
            elif suffix in ("en", "es", "e"):
                if in_r1(suffix):
                    word = word[: -len(suffix)]
                    if word.endswith("niss"):
                        word = word[:-1]
            else:  # "s"
                if in_r1(suffix) and len(word) > 1 and word[-2] in _DE_S_ENDING:
                    word = word[:-1]
            break

    # step 2
    for suffix in _DE_STEP2:
        if word.endswith(suffix):
            if suffix == "st":
                if in_r1(suffix) and len(word) >= 6 and word[-3] in _DE_ST_ENDING:
                    word = word[:-2]
            else:
                if in_r1(suffix):
                    word = word[: -len(suffix)]
            break

    # step 3
    for suffix in _DE_STEP3:
        if word.endswith(suffix):
            if suffix in ("end", "ung"):
                if in_r2(suffix):
                    word = word[: -len(suffix)]
                    if word.endswith("ig") and in_r2("ig") and not word.endswith("eig"):
                        word = word[:-2]
            elif suffix in ("ig", "ik", "isch"):
                if in_r2(suffix) and word[-len(suffix) - 1] != "e":
                    word = word[: -len(suffix)]
            elif suffix in ("lich", "heit"):
                if in_r2(suffix):
                    word = word[: -len(suffix)]
                    for sub in ("er", "en"):
                        if word.endswith(sub) and in_r1(sub):
                            word = word[:-2]
                            break
            else:  # "keit"
                if in_r2(suffix):
                    word = word[: -len(suffix)]
                    if word.endswith("lich") and in_r2("lich"):
                        word = word[:-4]
                    elif word.endswith("ig") and in_r2("ig"):
                        word = word[:-2]
            break

    word = word.replace("U", "u").replace("Y", "y")
    return word.translate(str.maketrans("äöü", "aou"))


# ---------------------------------------------------------------------------
# French

_FR_VOWELS = "aeiouyâàëéêèïîôûù"

_FR_STEP1 = [
    "issements", "issement",
    "atrices", "amment", "emment",
    "atrice", "ateurs", "ations", "logies", "usions", "utions", "ements",
    "ances", "ateur", "ation", "ement", "ences", "euses", "ismes", "ables",
    "iqUes", "istes", "ités", "ives",
    "ance", "ence", "euse", "isme", "able", "iqUe", "iste", "logie",
    "usion", "ution", "eaux", "ment", "ments",
    "ité", "ive", "ifs", "eux", "aux",
    "if",
]

_FR_STEP2A = [
    "issaIent", "issantes", "issions", "issants", "issante",
    "iraIent", "issais", "issait", "issant", "issent", "issiez", "issons",
    "irions", "iriez", "irons", "iront", "irais", "irait", "irent", "irez",
    "issez", "isses", "isse",
    "irai", "iras", "ira", "îmes", "îtes",
    "ies", "ir", "is", "ie", "it", "ît",
    "i",
]

_FR_STEP2B_IONS = "ions"
_FR_STEP2B_ER = [
    "eraIent", "erions", "èrent", "erais", "erait", "eriez", "erons", "eront",
    "erai", "eras", "erez", "ées", "era", "iez", "ez", "ée", "és", "er", "é",
]
_FR_STEP2B_A = [
    "assions", "assiez", "assent", "asses", "antes", "aIent",
    "asse", "âmes", "âtes", "ante", "ants", "ais", "ait", "ant",
    "ât", "ai", "as", "a",
]


def _fr_is_vowel(ch: str) -> bool:
    return ch in _FR_VOWELS


def _fr_prelude(word: str) -> str:
    chars = list(word)
    for i, ch in enumerate(word):
        prev_v = i > 0 and _fr_is_vowel(word[i - 1])
        next_v = i + 1 < len(word) and _fr_is_vowel(word[i + 1])
        if ch in "ui" and prev_v and next_v:
            chars[i] = ch.upper()
        elif ch == "y" and (prev_v or next_v):
            chars[i] = "Y"
        elif ch == "u" and i > 0 and word[i - 1] == "q":
            chars[i] = "U"
    return "".join(chars)


def _fr_regions(word: str) -> tuple[int, int, int]:
    if len(word) >= 3 and _fr_is_vowel(word[0]) and _fr_is_vowel(word[1]):
        rv = 3
    elif word[:3] in ("par", "col", "tap"):
        rv = 3
    else:
        rv = len(word)
        for i in range(1, len(word)):
            if _fr_is_vowel(word[i]):
                rv = i + 1
                break
    r1 = len(word)
    for i in range(1, len(word)):
        if not _fr_is_vowel(word[i]) and _fr_is_vowel(word[i - 1]):
            r1 = i + 1
            break
    r2 = len(word)
    for i in range(r1 + 1, len(word)):
        if not _fr_is_vowel(word[i]) and _fr_is_vowel(word[i - 1]):
            r2 = i + 1
            break
    return rv, r1, r2


def _fr_step1(word: str, rv: int, r1: int, r2: int) -> tuple[str, bool, bool]:
    """Returns (word, changed, two_a_required)."""

    def pos(suffix: str) -> int:
        return len(word) - len(suffix)

    matched = None
    for suffix in sorted(_FR_STEP1, key=len, reverse=True):
        if word.endswith(suffix):
            matched = suffix
            break
    if matched is None:
        # nothing removed, so the verb-suffix steps must run
        return word, False, True

    s = matched
    p = pos(s)
    changed = False
    ment_like = s in ("amment", "emment", "ment", "ments")

    if s in ("ances", "iqUes", "ismes", "ables", "istes",
             "ance", "iqUe", "isme", "able", "iste", "eux"):
        if p >= r2:
            word = word[:p]
            changed = True
    elif s in ("atrices", "atrice", "ateurs", "ations", "ateur", "ation"):
        if p >= r2:
            word = word[:p]
            changed = True
            if word.endswith("ic"):
                if len(word) - 2 >= r2:
                    word = word[:-2]
                else:
                    word = word[:-2] + "iqU"
    elif s in ("logies", "logie"):
        if p >= r2:
            word = word[:p] + "log"
            changed = True
    elif s in ("usions", "utions", "usion", "ution"):
        if p >= r2:
            word = word[:p] + "u"
            changed = True
    elif s in ("ences", "ence"):
        if p >= r2:
            word = word[:p] + "ent"
            changed = True
    elif s in ("ements", "ement"):
        if p >= rv:
            word = word[:p]
            changed = True
            if word.endswith("iv") and len(word) - 2 >= r2:
                word = word[:-2]
                if word.endswith("at") and len(word) - 2 >= r2:
                    word = word[:-2]
            elif word.endswith("eus"):
                if len(word) - 3 >= r2:
                    word = word[:-3]
                elif len(word) - 3 >= r1:
                    word = word[:-3] + "eux"
            elif word.endswith("abl") and len(word) - 3 >= r2:
                word = word[:-3]
            elif word.endswith("iqU") and len(word) - 3 >= r2:
                word = word[:-3]
            elif word.endswith(("ièr", "Ièr")) and len(word) - 3 >= rv:
                word = word[:-3] + "i"
    elif s in ("ités", "ité"):
        if p >= r2:
            word = word[:p]
            changed = True
            if word.endswith("abil"):
                if len(word) - 4 >= r2:
                    word = word[:-4]
                else:
                    word = word[:-4] + "abl"
            elif word.endswith("ic"):
                if len(word) - 2 >= r2:
                    word = word[:-2]
                else:
                    word = word[:-2] + "iqU"
            elif word.endswith("iv") and len(word) - 2 >= r2:
                word = word[:-2]
    elif s in ("ives", "ive", "ifs", "if"):
        if p >= r2:
            word = word[:p]
            changed = True
            if word.endswith("at") and len(word) - 2 >= r2:
                word = word[:-2]
                if word.endswith("ic"):
                    if len(word) - 2 >= r2:
                        word = word[:-2]
                    else:
                        word = word[:-2] + "iqU"
    elif s == "eaux":
        word = word[:p] + "eau"
        changed = True
    elif s == "aux":
        if p >= r1:
            word = word[:p] + "al"
            changed = True
    elif s in ("euses", "euse"):
        if p >= r2:
            word = word[:p]
            changed = True
        elif p >= r1:
            word = word[:p] + "eux"
            changed = True
    elif s in ("issements", "issement"):
        if p >= r1 and p > 0 and not _fr_is_vowel(word[p - 1]):
            word = word[:p]
            changed = True
    elif s == "amment":
        if p >= rv:
            word = word[:p] + "ant"
            changed = True
    elif s == "emment":
        if p >= rv:
            word = word[:p] + "ent"
            changed = True
    elif s in ("ments", "ment"):
        if p >= 1 and p - 1 >= rv and _fr_is_vowel(word[p - 1]):
            word = word[:p]
            changed = True

    return word, changed, (not changed) or ment_like


def _fr_step2a(word: str, rv: int) -> tuple[str, bool]:
    rv_str = word[rv:]
    for suffix in sorted(_FR_STEP2A, key=len, reverse=True):
        if rv_str.endswith(suffix) and len(rv_str) > len(suffix):
            if not _fr_is_vowel(rv_str[-len(suffix) - 1]):
                return word[: len(word) - len(suffix)], True
            return word, False
    return word, False


def _fr_step2b(word: str, rv: int, r2: int) -> tuple[str, bool]:
    rv_str = word[rv:]
    candidates = [_FR_STEP2B_IONS] + _FR_STEP2B_ER + _FR_STEP2B_A
    matched = None
    for suffix in sorted(candidates, key=len, reverse=True):
        if rv_str.endswith(suffix):
            matched = suffix
            break
    if matched is None:
        return word, False
    p = len(word) - len(matched)
    if matched == _FR_STEP2B_IONS:
        if p >= r2:
            return word[:p], True
        return word, False
    if matched in _FR_STEP2B_ER:
        return word[:p], True
    # a-group
    word = word[:p]
    if word.endswith("e") and len(word) - 1 >= rv:
        word = word[:-1]
    return word, True


def _fr_step4(word: str, rv: int, r2: int) -> str:
    if word.endswith("s") and len(word) > 1 and word[-2] not in "aiouès":
        word = word[:-1]
    rv_str = word[rv:]
    if rv_str.endswith("ion") and len(word) - 3 >= r2 and len(word) > 3 and word[-4] in "st":
        return word[:-3]
    for suffix in ("ière", "Ière", "ier", "Ier"):
        if rv_str.endswith(suffix):
            return word[: len(word) - len(suffix)] + "i"
    if rv_str.endswith("ë") and word.endswith("guë"):
        return word[:-1]
    if rv_str.endswith("e"):
        return word[:-1]
    return word


def _fr_stem(word: str) -> str:
    if len(word) <= 2:
        return word
    word = _fr_prelude(word)
    rv, r1, r2 = _fr_regions(word)

    word, changed1, do_2a = _fr_step1(word, rv, r1, r2)
    altered = changed1
    if do_2a:
        word, changed2a = _fr_step2a(word, rv)
        if changed2a:
            altered = True
        else:
            word, altered = _fr_step2b(word, rv, r2)

    if altered:
        if word.endswith("Y"):
            word = word[:-1] + "i"
        elif word.endswith("ç"):
            word = word[:-1] + "c"
    else:
        word = _fr_step4(word, rv, r2)

    # undouble
    for suffix in ("enn", "onn", "ett", "ell", "eill"):
        if word.endswith(suffix):
            word = word[:-1]
            break

    # un-accent: é/è followed only by non-vowels
    i = len(word) - 1
    while i >= 0 and not _fr_is_vowel(word[i]) and word[i] not in "éè":
        i -= 1
    if i >= 0 and word[i] in "éè" and i < len(word) - 1:
        word = word[:i] + "e" + word[i + 1:]

    return word.lower()


# ---------------------------------------------------------------------------
# Public interface

_ALGORITHMS = {
    "en": _en_stem,
    "de": _de_stem,
    "fr": _fr_stem,
}

_caches: dict[str, dict[str, str]] = {}


def supported_languages() -> tuple[str, ...]:
    """Languages with a real stemming algorithm (all others use identity)."""
    return tuple(sorted(_ALGORITHMS))


def stem(token: str, lang: str) -> str:
    """Lowercase then stem a token; identity (lowercased) for unsupported languages."""
    cache = _caches.setdefault(lang, {})
    cached = cache.get(token)
    if cached is not None:
        return cached
    lowered = token.lower()
    algo = _ALGORITHMS.get(lang)
    result = algo(lowered) if algo else lowered
    cache[token] = result
    return result


def stem_phrase(tokens: list[str] | tuple[str, ...], lang: str) -> str:
    """Per-token stems joined by single spaces; empty input gives ''."""
    return " ".join(stem(t, lang) for t in tokens)

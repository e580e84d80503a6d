"""Algorithmic stemmers for the supported languages.

Spanish follows the Snowball stemming algorithm, English the classic
Porter algorithm. Both are pure string rewriting: no dictionaries, no
model files, deterministic output for a given lowercase input word.
"""

from __future__ import annotations

from .errors import UnsupportedLanguage

_ES_VOWELS = "aeiouáéíóúü"


def _es_regions(word: str) -> tuple[int, int, int]:
    """Return (r1, r2, rv) start indices for a Spanish word.

    R1 is the region after the first non-vowel following a vowel, R2 the
    same rule applied inside R1. RV depends on the first two letters.
    Missing positions default to the end of the word.
    """
    n = len(word)

    def first_nonvowel_after_vowel(start: int) -> int:
        i = start
        while i < n:
            if word[i] in _ES_VOWELS:
                j = i + 1
                while j < n:
                    if word[j] not in _ES_VOWELS:
                        return j + 1
                    j += 1
                return n
            i += 1
        return n

    r1 = first_nonvowel_after_vowel(0)
    r2 = first_nonvowel_after_vowel(r1)

    rv = n
    if n >= 3:
        if word[1] not in _ES_VOWELS:
            # Next vowel after position 1.
            i = 2
            while i < n and word[i] not in _ES_VOWELS:
                i += 1
            rv = min(i + 1, n)
        elif word[0] in _ES_VOWELS and word[1] in _ES_VOWELS:
            # Next consonant after position 1.
            i = 2
            while i < n and word[i] in _ES_VOWELS:
                i += 1
            rv = min(i + 1, n)
        else:
            rv = 3
    return r1, r2, rv


def _longest_suffix(word: str, suffixes: tuple[str, ...]) -> str | None:
    best = None
    for s in suffixes:
        if word.endswith(s) and (best is None or len(s) > len(best)):
            best = s
    return best


_ES_PRONOUNS = (
    "me", "se", "sela", "selo", "selas", "selos",
    "la", "le", "lo", "las", "les", "los", "nos",
)
_ES_STEP0_A = ("iéndo", "ándo", "ár", "ér", "ír")
_ES_STEP0_B = ("ando", "iendo", "ar", "er", "ir")
_ES_STEP0_DEACCENT = {"iéndo": "iendo", "ándo": "ando", "ár": "ar", "ér": "er", "ír": "ir"}

_ES_STEP1_DELETE_R2 = (
    "anza", "anzas", "ico", "ica", "icos", "icas", "ismo", "ismos",
    "able", "ables", "ible", "ibles", "ista", "istas", "oso", "osa",
    "osos", "osas", "amiento", "amientos", "imiento", "imientos",
)
_ES_STEP1_ADOR = ("adora", "ador", "ación", "adoras", "adores", "aciones", "ante", "antes", "ancia", "ancias")
_ES_STEP1_LOGIA = ("logía", "logías")
_ES_STEP1_UCION = ("ución", "uciones")
_ES_STEP1_ENCIA = ("encia", "encias")
_ES_STEP1_IDAD = ("idad", "idades")
_ES_STEP1_IVA = ("iva", "ivo", "ivas", "ivos")

_ES_STEP2A = ("ya", "ye", "yan", "yen", "yeron", "yendo", "yo", "yó", "yas", "yes", "yais", "yamos")
_ES_STEP2B_GU = ("en", "es", "éis", "emos")
_ES_STEP2B = (
    "arían", "arías", "arán", "arás", "aríais", "aría", "aréis", "aríamos",
    "aremos", "ará", "aré", "erían", "erías", "erán", "erás", "eríais",
    "ería", "eréis", "eríamos", "eremos", "erá", "eré", "irían", "irías",
    "irán", "irás", "iríais", "iría", "iréis", "iríamos", "iremos", "irá",
    "iré", "aba", "ada", "ida", "ía", "ara", "iera", "ad", "ed", "id",
    "ase", "iese", "aste", "iste", "an", "aban", "ían", "aran", "ieran",
    "asen", "iesen", "aron", "ieron", "ado", "ido", "ando", "iendo", "ió",
    "ar", "er", "ir", "as", "abas", "adas", "idas", "ías", "aras", "ieras",
    "ases", "ieses", "ís", "áis", "abais", "íais", "arais", "ierais",
    "aseis", "ieseis", "asteis", "isteis", "ados", "idos", "amos",
    "ábamos", "íamos", "imos", "áramos", "iéramos", "iésemos", "ásemos",
)
_ES_STEP3_DELETE = ("os", "a", "o", "á", "í", "ó")
_ES_STEP3_E = ("e", "é")

_ES_ACCENT_MAP = str.maketrans("áéíóú", "aeiou")


def stem_spanish(word: str) -> str:
    """Stem one lowercase Spanish word."""
    if len(word) <= 2:
        return word.translate(_ES_ACCENT_MAP)

    r1, r2, rv = _es_regions(word)

    # Region starts are fixed positions in the original word; deletions
    # only shorten the tail, so suffix-in-region checks stay valid.
    def in_r1_now(suffix: str) -> bool:
        return len(word) - len(suffix) >= r1

    def in_r2_now(suffix: str) -> bool:
        return len(word) - len(suffix) >= r2

    def in_rv_now(suffix: str) -> bool:
        return len(word) - len(suffix) >= rv

    # Step 0: attached pronouns after a gerund or infinitive, inside RV.
    pron = _longest_suffix(word, _ES_PRONOUNS)
    if pron and in_rv_now(pron):
        base = word[: -len(pron)]
        end_a = _longest_suffix(base, _ES_STEP0_A)
        end_b = _longest_suffix(base, _ES_STEP0_B)
        if end_a and len(base) - len(end_a) >= rv:
            word = base[: -len(end_a)] + _ES_STEP0_DEACCENT[end_a]
        elif end_b and len(base) - len(end_b) >= rv:
            word = base
        elif base.endswith("yendo") and len(base) - 5 >= rv and len(base) >= 6 and base[-6] == "u":
            word = base

    # Step 1: standard suffixes. Longest match over the whole group wins;
    # if its region condition fails nothing is removed in this step.
    removed = False
    all_step1 = (
        _ES_STEP1_DELETE_R2 + _ES_STEP1_ADOR + _ES_STEP1_LOGIA
        + _ES_STEP1_UCION + _ES_STEP1_ENCIA + ("amente", "mente")
        + _ES_STEP1_IDAD + _ES_STEP1_IVA
    )
    suf = _longest_suffix(word, all_step1)
    if suf:
        if suf in _ES_STEP1_DELETE_R2:
            if in_r2_now(suf):
                word = word[: -len(suf)]
                removed = True
        elif suf in _ES_STEP1_ADOR:
            if in_r2_now(suf):
                word = word[: -len(suf)]
                removed = True
                if word.endswith("ic") and len(word) - 2 >= r2:
                    word = word[:-2]
        elif suf in _ES_STEP1_LOGIA:
            if in_r2_now(suf):
                word = word[: -len(suf)] + "log"
                removed = True
        elif suf in _ES_STEP1_UCION:
            if in_r2_now(suf):
                word = word[: -len(suf)] + "u"
                removed = True
        elif suf in _ES_STEP1_ENCIA:
            if in_r2_now(suf):
                word = word[: -len(suf)] + "ente"
                removed = True
        elif suf == "amente":
            if in_r1_now(suf):
                word = word[: -len(suf)]
                removed = True
                if word.endswith("iv") and len(word) - 2 >= r2:
                    word = word[:-2]
                    if word.endswith("at") and len(word) - 2 >= r2:
                        word = word[:-2]
                elif any(word.endswith(p) and len(word) - 2 >= r2 for p in ("os", "ic", "ad")):
                    word = word[:-2]
        elif suf == "mente":
            if in_r2_now(suf):
                word = word[: -len(suf)]
                removed = True
                if any(word.endswith(p) and len(word) - len(p) >= r2 for p in ("ante", "able", "ible")):
                    word = word[:-4]
        elif suf in _ES_STEP1_IDAD:
            if in_r2_now(suf):
                word = word[: -len(suf)]
                removed = True
                for p in ("abil", "ic", "iv"):
                    if word.endswith(p) and len(word) - len(p) >= r2:
                        word = word[: -len(p)]
                        break
        elif suf in _ES_STEP1_IVA:
            if in_r2_now(suf):
                word = word[: -len(suf)]
                removed = True
                if word.endswith("at") and len(word) - 2 >= r2:
                    word = word[:-2]

    # Step 2a/2b: verb suffixes, only when step 1 removed nothing.
    if not removed:
        suf = _longest_suffix(word, _ES_STEP2A)
        removed2a = False
        if suf and in_rv_now(suf) and word[: -len(suf)].endswith("u"):
            word = word[: -len(suf)]
            removed2a = True
        if not removed2a:
            suf = _longest_suffix(word, _ES_STEP2B_GU + _ES_STEP2B)
            if suf and in_rv_now(suf):
                word = word[: -len(suf)]
                if suf in _ES_STEP2B_GU and word.endswith("gu"):
                    word = word[:-1]

    # Step 3: residual vowel suffix.
    suf = _longest_suffix(word, _ES_STEP3_DELETE + _ES_STEP3_E)
    if suf and in_rv_now(suf):
        word = word[: -len(suf)]
        if suf in _ES_STEP3_E and word.endswith("gu") and len(word) - 1 >= rv:
            word = word[:-1]

    return word.translate(_ES_ACCENT_MAP)


# --- Porter stemmer (English) -------------------------------------------

def _en_is_consonant(word: str, i: int) -> bool:
    c = word[i]
    if c in "aeiou":
        return False
    if c == "y":
        return i == 0 or not _en_is_consonant(word, i - 1)
    return True


def _en_measure(stem: str) -> int:
    """Count VC sequences: [C](VC)^m[V]."""
    forms = ""
    for i in range(len(stem)):
        forms += "c" if _en_is_consonant(stem, i) else "v"
    m = 0
    prev = None
    for ch in forms:
        if prev == "v" and ch == "c":
            m += 1
        prev = ch
    return m


def _en_has_vowel(stem: str) -> bool:
    return any(not _en_is_consonant(stem, i) for i in range(len(stem)))


def _en_double_consonant(word: str) -> bool:
    return (
        len(word) >= 2
        and word[-1] == word[-2]
        and _en_is_consonant(word, len(word) - 1)
    )


def _en_cvc(word: str) -> bool:
    if len(word) < 3:
        return False
    return (
        _en_is_consonant(word, len(word) - 3)
        and not _en_is_consonant(word, len(word) - 2)
        and _en_is_consonant(word, len(word) - 1)
        and word[-1] not in "wxy"
    )


def _en_rule_match(word: str, rules: list[tuple[str, str, int | None]]) -> str:
    """Apply the longest-matching rule whose m-condition holds.

    Porter semantics: the longest matching suffix in a step is selected
    first; if its condition fails the step changes nothing.
    """
    best = None
    for suffix, replacement, min_m in rules:
        if word.endswith(suffix) and (best is None or len(suffix) > len(best[0])):
            best = (suffix, replacement, min_m)
    if best is None:
        return word
    suffix, replacement, min_m = best
    stem = word[: -len(suffix)] if suffix else word
    if min_m is not None and _en_measure(stem) <= min_m:
        return word
    return stem + replacement


def stem_english(word: str) -> str:
    """Stem one lowercase English word (Porter algorithm)."""
    if len(word) <= 2:
        return word

    # Step 1a
    if word.endswith("sses"):
        word = word[:-2]
    elif word.endswith("ies"):
        word = word[:-2]
    elif word.endswith("ss"):
        pass
    elif word.endswith("s"):
        word = word[:-1]

    # Step 1b
    if word.endswith("eed"):
        if _en_measure(word[:-3]) > 0:
            word = word[:-1]
    else:
        hit = None
        if word.endswith("ed") and _en_has_vowel(word[:-2]):
            hit = word[:-2]
        elif word.endswith("ing") and _en_has_vowel(word[:-3]):
            hit = word[:-3]
        if hit is not None:
            word = hit
            if word.endswith(("at", "bl", "iz")):
                word += "e"
            elif _en_double_consonant(word) and word[-1] not in "lsz":
                word = word[:-1]
            elif _en_measure(word) == 1 and _en_cvc(word):
                word += "e"

    # Step 1c
    if word.endswith("y") and _en_has_vowel(word[:-1]):
        word = word[:-1] + "i"

    word = _en_rule_match(word, [
        ("ational", "ate", 0), ("tional", "tion", 0), ("enci", "ence", 0),
        ("anci", "ance", 0), ("izer", "ize", 0), ("abli", "able", 0),
        ("alli", "al", 0), ("entli", "ent", 0), ("eli", "e", 0),
        ("ousli", "ous", 0), ("ization", "ize", 0), ("ation", "ate", 0),
        ("ator", "ate", 0), ("alism", "al", 0), ("iveness", "ive", 0),
        ("fulness", "ful", 0), ("ousness", "ous", 0), ("aliti", "al", 0),
        ("iviti", "ive", 0), ("biliti", "ble", 0),
    ])

    word = _en_rule_match(word, [
        ("icate", "ic", 0), ("ative", "", 0), ("alize", "al", 0),
        ("iciti", "ic", 0), ("ical", "ic", 0), ("ful", "", 0),
        ("ness", "", 0),
    ])

    # Step 4: drop the suffix when m > 1; "ion" additionally needs s/t.
    best = None
    for suffix in ("ement", "ment", "ance", "ence", "able", "ible", "ant",
                   "ent", "ion", "ism", "ate", "iti", "ous", "ive", "ize",
                   "ou", "er", "ic", "al"):
        if word.endswith(suffix) and (best is None or len(suffix) > len(best)):
            best = suffix
    if best is not None:
        stem = word[: -len(best)]
        ok = _en_measure(stem) > 1
        if best == "ion":
            ok = ok and stem.endswith(("s", "t"))
        if ok:
            word = stem

    # Step 5a
    if word.endswith("e"):
        stem = word[:-1]
        m = _en_measure(stem)
        if m > 1 or (m == 1 and not _en_cvc(stem)):
            word = stem

    # Step 5b
    if _en_measure(word) > 1 and _en_double_consonant(word) and word.endswith("l"):
        word = word[:-1]

    return word


_STEMMERS = {"es": stem_spanish, "en": stem_english}


def get_stemmer(language: str):
    """Return the stem function for a language code, or raise."""
    try:
        return _STEMMERS[language]
    except KeyError:
        raise UnsupportedLanguage(
            f"language {language!r} not supported (expected one of {sorted(_STEMMERS)})"
        ) from None

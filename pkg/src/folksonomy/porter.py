"""Porter (1980) suffix-stripping stemmer.

Follows the behaviour of Martin Porter's reference implementation, including
its two documented departures from the published rules (``bli -> ble`` in
place of ``abli -> able``, and the extra ``logi -> log`` rule), so output
agrees with the reference vocabulary. Input is expected to be a lowercase
ASCII word; words of two letters or fewer are returned unchanged.
"""
from functools import lru_cache

__all__ = ["stem", "PorterStemmer"]


class _Word:
    __slots__ = ("b", "k", "j")

    def __init__(self, word):
        self.b = word
        self.k = len(word) - 1
        self.j = 0

    def cons(self, i):
        ch = self.b[i]
        if ch in "aeiou":
            return False
        if ch == "y":
            return i == 0 or not self.cons(i - 1)
        return True

    def m(self):
        """Number of VC sequences in b[0..j]."""
        n = 0
        i = 0
        j = self.j
        while True:
            if i > j:
                return n
            if not self.cons(i):
                break
            i += 1
        i += 1
        while True:
            while True:
                if i > j:
                    return n
                if self.cons(i):
                    break
                i += 1
            i += 1
            n += 1
            while True:
                if i > j:
                    return n
                if not self.cons(i):
                    break
                i += 1
            i += 1

    def vowel_in_stem(self):
        return any(not self.cons(i) for i in range(self.j + 1))

    def doublec(self, j):
        return j >= 1 and self.b[j] == self.b[j - 1] and self.cons(j)

    def cvc(self, i):
        if i < 2 or not self.cons(i) or self.cons(i - 1) or not self.cons(i - 2):
            return False
        return self.b[i] not in "wxy"

    def ends(self, s):
        n = len(s)
        if n > self.k + 1 or self.b[self.k - n + 1:self.k + 1] != s:
            return False
        self.j = self.k - n
        return True

    def setto(self, s):
        self.b = self.b[:self.j + 1] + s
        self.k = self.j + len(s)

    def r(self, s):
        if self.m() > 0:
            self.setto(s)

    def step1ab(self):
        if self.b[self.k] == "s":
            if self.ends("sses"):
                self.k -= 2
            elif self.ends("ies"):
                self.setto("i")
            elif self.b[self.k - 1] != "s":
                self.k -= 1
        if self.ends("eed"):
            if self.m() > 0:
                self.k -= 1
        elif (self.ends("ed") or self.ends("ing")) and self.vowel_in_stem():
            self.k = self.j
            if self.ends("at"):
                self.setto("ate")
            elif self.ends("bl"):
                self.setto("ble")
            elif self.ends("iz"):
                self.setto("ize")
            elif self.doublec(self.k):
                self.k -= 1
                if self.b[self.k] in "lsz":
                    self.k += 1
            elif self.m() == 1 and self.cvc(self.k):
                self.setto("e")

    def step1c(self):
        if self.ends("y") and self.vowel_in_stem():
            self.b = self.b[:self.k] + "i" + self.b[self.k + 1:]

    def _rules(self, table):
        # first suffix that matches decides, whether or not the measure allows the rewrite
        for suffix, repl in table.get(self.b[self.k - 1], ()):
            if self.ends(suffix):
                self.r(repl)
                return

    def step2(self):
        self._rules(_STEP2)

    def step3(self):
        for suffix, repl in _STEP3.get(self.b[self.k], ()):
            if self.ends(suffix):
                self.r(repl)
                return

    def step4(self):
        ch = self.b[self.k - 1]
        if ch == "o":
            if not (self.ends("ion") and self.j >= 0 and self.b[self.j] in "st") \
                    and not self.ends("ou"):
                return
        else:
            for suffix in _STEP4.get(ch, ()):
                if self.ends(suffix):
                    break
            else:
                return
        if self.m() > 1:
            self.k = self.j

    def step5(self):
        self.j = self.k
        if self.b[self.k] == "e":
            a = self.m()
            if a > 1 or (a == 1 and not self.cvc(self.k - 1)):
                self.k -= 1
        if self.b[self.k] == "l" and self.doublec(self.k) and self.m() > 1:
            self.k -= 1

    def result(self):
        return self.b[:self.k + 1]


_STEP2 = {
    "a": (("ational", "ate"), ("tional", "tion")),
    "c": (("enci", "ence"), ("anci", "ance")),
    "e": (("izer", "ize"),),
    "l": (("bli", "ble"), ("alli", "al"), ("entli", "ent"), ("eli", "e"), ("ousli", "ous")),
    "o": (("ization", "ize"), ("ation", "ate"), ("ator", "ate")),
    "s": (("alism", "al"), ("iveness", "ive"), ("fulness", "ful"), ("ousness", "ous")),
    "t": (("aliti", "al"), ("iviti", "ive"), ("biliti", "ble")),
    "g": (("logi", "log"),),
}

_STEP3 = {
    "e": (("icate", "ic"), ("ative", ""), ("alize", "al")),
    "i": (("iciti", "ic"),),
    "l": (("ical", "ic"), ("ful", "")),
    "s": (("ness", ""),),
}

_STEP4 = {
    "a": ("al",),
    "c": ("ance", "ence"),
    "e": ("er",),
    "i": ("ic",),
    "l": ("able", "ible"),
    "n": ("ant", "ement", "ment", "ent"),
    "s": ("ism",),
    "t": ("ate", "iti"),
    "u": ("ous",),
    "v": ("ive",),
    "z": ("ize",),
}


@lru_cache(maxsize=1 << 16)
def stem(word: str) -> str:
    if len(word) <= 2:
        return word
    w = _Word(word)
    w.step1ab()
    if w.k > 0:
        w.step1c()
        w.step2()
        w.step3()
        w.step4()
        w.step5()
    return w.result()


class PorterStemmer:
    """Callable wrapper, for code that wants a stemmer object."""

    def stem(self, word: str) -> str:
        return stem(word)

    __call__ = stem

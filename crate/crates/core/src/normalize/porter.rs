//! The original Porter suffix-stripping stemmer, following the behaviour of
//! the author's reference C implementation (including its `bli`→`ble` and
//! `logi`→`log` step-2 rules).

struct Stemmer {
    b: Vec<char>,
    /// Index one past the end of the current word.
    k: usize,
}

impl Stemmer {
    fn cons(&self, i: usize) -> bool {
        match self.b[i] {
            'a' | 'e' | 'i' | 'o' | 'u' => false,
            'y' => i == 0 || !self.cons(i - 1),
            _ => true,
        }
    }

    /// Number of VC sequences in `b[..end]`.
    fn measure(&self, end: usize) -> usize {
        let mut n = 0;
        let mut i = 0;
        while i < end && self.cons(i) {
            i += 1;
        }
        loop {
            while i < end && !self.cons(i) {
                i += 1;
            }
            if i >= end {
                return n;
            }
            while i < end && self.cons(i) {
                i += 1;
            }
            n += 1;
        }
    }

    fn vowel_in(&self, end: usize) -> bool {
        (0..end).any(|i| !self.cons(i))
    }

    /// Double consonant ending at index `j`.
    fn double_cons(&self, j: usize) -> bool {
        j >= 1 && self.b[j] == self.b[j - 1] && self.cons(j)
    }

    /// consonant-vowel-consonant ending at index `i`, last consonant not w, x or y.
    fn cvc(&self, i: usize) -> bool {
        if i < 2 || !self.cons(i) || self.cons(i - 1) || !self.cons(i - 2) {
            return false;
        }
        !matches!(self.b[i], 'w' | 'x' | 'y')
    }

    fn ends(&self, s: &str) -> bool {
        let len = s.chars().count();
        len <= self.k && self.b[self.k - len..self.k].iter().copied().eq(s.chars())
    }

    /// Stem length if the word ends with `s`.
    fn stem_len(&self, s: &str) -> usize {
        self.k - s.chars().count()
    }

    fn set_to(&mut self, stem: usize, s: &str) {
        self.b.truncate(stem);
        self.b.extend(s.chars());
        self.k = self.b.len();
    }

    /// Replace suffix `from` by `to` when the remaining stem has measure > 0.
    /// Returns whether `from` matched at all.
    fn replace_if_m0(&mut self, from: &str, to: &str) -> bool {
        if !self.ends(from) {
            return false;
        }
        let stem = self.stem_len(from);
        if self.measure(stem) > 0 {
            self.set_to(stem, to);
        }
        true
    }

    fn step1ab(&mut self) {
        if self.b[self.k - 1] == 's' {
            if self.ends("sses") {
                self.k -= 2;
            } else if self.ends("ies") {
                let stem = self.stem_len("ies");
                self.set_to(stem, "i");
            } else if self.k >= 2 && self.b[self.k - 2] != 's' {
                self.k -= 1;
            }
            self.b.truncate(self.k);
        }
        if self.ends("eed") {
            if self.measure(self.stem_len("eed")) > 0 {
                self.k -= 1;
                self.b.truncate(self.k);
            }
            return;
        }
        let suffix = if self.ends("ed") {
            "ed"
        } else if self.ends("ing") {
            "ing"
        } else {
            return;
        };
        let stem = self.stem_len(suffix);
        if !self.vowel_in(stem) {
            return;
        }
        self.k = stem;
        self.b.truncate(stem);
        if self.ends("at") {
            self.set_to(self.k - 2, "ate");
        } else if self.ends("bl") {
            self.set_to(self.k - 2, "ble");
        } else if self.ends("iz") {
            self.set_to(self.k - 2, "ize");
        } else if self.double_cons(self.k - 1) {
            if !matches!(self.b[self.k - 1], 'l' | 's' | 'z') {
                self.k -= 1;
                self.b.truncate(self.k);
            }
        } else if self.measure(self.k) == 1 && self.cvc(self.k - 1) {
            self.b.push('e');
            self.k += 1;
        }
    }

    fn step1c(&mut self) {
        if self.ends("y") && self.vowel_in(self.k - 1) {
            self.b[self.k - 1] = 'i';
        }
    }

    fn step2(&mut self) {
        if self.k < 2 {
            return;
        }
        let rules: &[(&str, &str)] = match self.b[self.k - 2] {
            'a' => &[("ational", "ate"), ("tional", "tion")],
            'c' => &[("enci", "ence"), ("anci", "ance")],
            'e' => &[("izer", "ize")],
            'l' => &[("bli", "ble"), ("alli", "al"), ("entli", "ent"), ("eli", "e"), ("ousli", "ous")],
            'o' => &[("ization", "ize"), ("ation", "ate"), ("ator", "ate")],
            's' => &[("alism", "al"), ("iveness", "ive"), ("fulness", "ful"), ("ousness", "ous")],
            't' => &[("aliti", "al"), ("iviti", "ive"), ("biliti", "ble")],
            'g' => &[("logi", "log")],
            _ => return,
        };
        for (from, to) in rules {
            if self.replace_if_m0(from, to) {
                return;
            }
        }
    }

    fn step3(&mut self) {
        let rules: &[(&str, &str)] = match self.b[self.k - 1] {
            'e' => &[("icate", "ic"), ("ative", ""), ("alize", "al")],
            'i' => &[("iciti", "ic")],
            'l' => &[("ical", "ic"), ("ful", "")],
            's' => &[("ness", "")],
            _ => return,
        };
        for (from, to) in rules {
            if self.replace_if_m0(from, to) {
                return;
            }
        }
    }

    fn step4(&mut self) {
        if self.k < 2 {
            return;
        }
        let suffixes: &[&str] = match self.b[self.k - 2] {
            'a' => &["al"],
            'c' => &["ance", "ence"],
            'e' => &["er"],
            'i' => &["ic"],
            'l' => &["able", "ible"],
            'n' => &["ant", "ement", "ment", "ent"],
            'o' => &["ion", "ou"],
            's' => &["ism"],
            't' => &["ate", "iti"],
            'u' => &["ous"],
            'v' => &["ive"],
            'z' => &["ize"],
            _ => return,
        };
        let mut stem = None;
        for s in suffixes {
            if self.ends(s) {
                let j = self.stem_len(s);
                if *s == "ion" && !(j >= 1 && matches!(self.b[j - 1], 's' | 't')) {
                    continue;
                }
                stem = Some(j);
                break;
            }
        }
        if let Some(j) = stem {
            if self.measure(j) > 1 {
                self.k = j;
                self.b.truncate(j);
            }
        }
    }

    fn step5(&mut self) {
        if self.b[self.k - 1] == 'e' {
            let a = self.measure(self.k - 1);
            if a > 1 || (a == 1 && !(self.k >= 2 && self.cvc(self.k - 2))) {
                self.k -= 1;
                self.b.truncate(self.k);
            }
        }
        if self.b[self.k - 1] == 'l' && self.double_cons(self.k - 1) && self.measure(self.k) > 1 {
            self.k -= 1;
            self.b.truncate(self.k);
        }
    }
}

/// Stems a lowercased word. Words of one or two characters are returned as is.
pub fn porter_stem(word: &str) -> String {
    let b: Vec<char> = word.chars().collect();
    if b.len() <= 2 {
        return word.to_string();
    }
    let k = b.len();
    let mut s = Stemmer { b, k };
    s.step1ab();
    if s.k > 1 {
        s.step1c();
        s.step2();
        s.step3();
        s.step4();
        s.step5();
    }
    s.b.truncate(s.k);
    s.b.into_iter().collect()
}

//! Light Latvian stemmer: strips one nominal/adjectival inflection suffix and
//! undoes consonant palatalization for the declensions that trigger it.

struct Affix {
    suffix: &'static str,
    /// The word must contain strictly more vowels than this.
    vowels: usize,
    palatalizes: bool,
}

const fn affix(suffix: &'static str, vowels: usize, palatalizes: bool) -> Affix {
    Affix { suffix, vowels, palatalizes }
}

/// Checked in order; the first match wins.
const AFFIXES: &[Affix] = &[
    affix("ajiem", 3, false),
    affix("ajai", 3, false),
    affix("ajam", 2, false),
    affix("ajām", 2, false),
    affix("ajos", 2, false),
    affix("ajās", 2, false),
    affix("iem", 2, true),
    affix("ajā", 2, false),
    affix("ais", 2, false),
    affix("ai", 2, false),
    affix("ei", 2, false),
    affix("ām", 1, false),
    affix("am", 1, false),
    affix("ēm", 1, false),
    affix("īm", 1, false),
    affix("im", 1, false),
    affix("um", 1, false),
    affix("us", 1, true),
    affix("as", 1, false),
    affix("ās", 1, false),
    affix("es", 1, false),
    affix("os", 1, true),
    affix("ij", 1, false),
    affix("īs", 1, false),
    affix("ēs", 1, false),
    affix("is", 1, false),
    affix("ie", 1, false),
    affix("u", 1, true),
    affix("a", 1, true),
    affix("i", 1, true),
    affix("e", 1, false),
    affix("ā", 1, false),
    affix("ē", 1, false),
    affix("ī", 1, false),
    affix("ū", 1, false),
    affix("o", 1, false),
    affix("s", 0, false),
    affix("š", 0, false),
];

/// A stem needs at least this many characters left after stripping.
pub const MIN_STEM_LEN: usize = 3;

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'ā' | 'e' | 'ē' | 'i' | 'ī' | 'o' | 'u' | 'ū' | 'A' | 'Ā' | 'E' | 'Ē' | 'I' | 'Ī' | 'O' | 'U' | 'Ū')
}

fn ends_with(s: &[char], suffix: &str) -> bool {
    let n = suffix.chars().count();
    n <= s.len() && s[s.len() - n..].iter().copied().eq(suffix.chars())
}

/// `removed` is the first character of the stripped suffix.
fn unpalatalize(s: &mut Vec<char>, removed: char) {
    let n = s.len();
    if removed == 'u' {
        if ends_with(s, "kš") {
            s[n - 1] = 's';
            s.push('t');
            return;
        }
        if ends_with(s, "ņņ") {
            s[n - 2] = 'n';
            s[n - 1] = 'n';
            return;
        }
    }
    if ["pj", "bj", "mj", "vj"].iter().any(|x| ends_with(s, x)) {
        s.pop();
        return;
    }
    for (from, to) in [("šņ", "sn"), ("žņ", "zn"), ("šļ", "sl"), ("žļ", "zl"), ("ļņ", "ln"), ("ļļ", "ll")] {
        if ends_with(s, from) {
            let mut t = to.chars();
            s[n - 2] = t.next().unwrap();
            s[n - 1] = t.next().unwrap();
            return;
        }
    }
    match s.last() {
        Some('č') => s[n - 1] = 'c',
        Some('ļ') => s[n - 1] = 'l',
        Some('ņ') => s[n - 1] = 'n',
        _ => {}
    }
}

pub fn latvian_stem(word: &str) -> String {
    let mut s: Vec<char> = word.chars().collect();
    let vowels = s.iter().filter(|c| is_vowel(**c)).count();
    for a in AFFIXES {
        let len = a.suffix.chars().count();
        if vowels > a.vowels && s.len() >= len + MIN_STEM_LEN && ends_with(&s, a.suffix) {
            let removed = s[s.len() - len];
            s.truncate(s.len() - len);
            if a.palatalizes {
                unpalatalize(&mut s, removed);
            }
            break;
        }
    }
    s.into_iter().collect()
}

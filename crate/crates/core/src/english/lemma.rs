//! Rule-based removal of `-ed`, `-ing` and third-person `-s`.

use super::Lexicon;

fn is_vowel(chars: &[char], i: usize) -> bool {
    match chars[i] {
        'a' | 'e' | 'i' | 'o' | 'u' => true,
        // y after a consonant acts as a vowel
        'y' => i > 0 && !is_vowel(chars, i - 1),
        _ => false,
    }
}

/// Number of vowel-consonant sequences in the stem.
fn measure(chars: &[char]) -> usize {
    let mut m = 0;
    let mut prev_vowel = false;
    for i in 0..chars.len() {
        let v = is_vowel(chars, i);
        if prev_vowel && !v {
            m += 1;
        }
        prev_vowel = v;
    }
    m
}

// consonant-vowel-consonant ending, last consonant not w, x or y
fn ends_cvc(chars: &[char]) -> bool {
    let n = chars.len();
    n >= 3
        && !is_vowel(chars, n - 3)
        && is_vowel(chars, n - 2)
        && !is_vowel(chars, n - 1)
        && !matches!(chars[n - 1], 'w' | 'x' | 'y')
}

fn restore_stem(stem: &str) -> String {
    let chars: Vec<char> = stem.chars().collect();
    let n = chars.len();
    if n >= 2 && chars[n - 1] == chars[n - 2] && !is_vowel(&chars, n - 1) {
        // "add", "err" are already base forms
        if n > 3 && !matches!(chars[n - 1], 'l' | 's' | 'z') {
            return chars[..n - 1].iter().collect();
        }
        return stem.to_string();
    }
    let needs_e = stem.ends_with("at")
        || stem.ends_with("bl")
        || stem.ends_with("iz")
        || stem.ends_with('v')
        // us -> use
        || (n == 2 && is_vowel(&chars, 0) && !is_vowel(&chars, 1))
        // provid -> provide, includ -> include
        || (n >= 3
            && chars[n - 1] == 'd'
            && matches!(chars[n - 2], 'i' | 'u')
            && !is_vowel(&chars, n - 3))
        // rais -> raise, releas -> release
        || (n >= 3 && chars[n - 1] == 's' && is_vowel(&chars, n - 2) && is_vowel(&chars, n - 3))
        // reduc -> reduce, charg -> charge
        || stem.ends_with('c')
        || stem.ends_with("rg")
        // issu -> issue
        || (n >= 2 && chars[n - 1] == 'u' && !is_vowel(&chars, n - 2))
        || (measure(&chars) == 1 && ends_cvc(&chars));
    if needs_e {
        format!("{stem}e")
    } else {
        stem.to_string()
    }
}

/// Lemma of a verb form. Unknown shapes are returned unchanged (lowercased).
pub fn lemmatize(word: &str, lexicon: &Lexicon) -> String {
    let w = word.to_lowercase();
    if let Some(base) = lexicon.verb_exceptions.get(&w) {
        return base.clone();
    }
    if w.len() > 4 && w.ends_with("ing") {
        return restore_stem(&w[..w.len() - 3]);
    }
    if w.len() > 3 && w.ends_with("ied") {
        return format!("{}y", &w[..w.len() - 3]);
    }
    if w.len() > 3 && w.ends_with("ed") {
        return restore_stem(&w[..w.len() - 2]);
    }
    if w.len() > 3 && w.ends_with("ies") {
        return format!("{}y", &w[..w.len() - 3]);
    }
    for suffix in ["sses", "shes", "ches", "xes", "zzes"] {
        if w.ends_with(suffix) {
            return w[..w.len() - 2].to_string();
        }
    }
    if w.len() > 3 && w.ends_with('s') && !w.ends_with("ss") && !w.ends_with("us") {
        return w[..w.len() - 1].to_string();
    }
    w
}

/// True when `word` has a participle shape (`-ed` or `-ing`).
pub fn is_participle_shape(word: &str) -> bool {
    let w = word.to_lowercase();
    (w.len() >= 4 && w.ends_with("ed")) || (w.len() >= 5 && w.ends_with("ing"))
}

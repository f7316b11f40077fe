use crate::fmonoid::{Kind, Presentation};
use crate::freelrm::{format_word, words_up_to, LRElement, PrefixSet, LETTERS};

use super::{Expectation, PresError, PresentationBundle, Target};

const MAX_WORD_LETTERS: usize = 4096;

fn words(alphabet: usize, max_len: usize) -> Result<Vec<Vec<u8>>, PresError> {
    if alphabet == 0 || alphabet > LETTERS.len() {
        return Err(PresError::BadParams(format!(
            "alphabet size {alphabet} out of range"
        )));
    }
    if max_len == 0 {
        return Err(PresError::BadParams(
            "word-length bound must be positive".into(),
        ));
    }
    let count: usize = (1..=max_len as u32)
        .map(|l| alphabet.saturating_pow(l))
        .fold(0, usize::saturating_add);
    if count > MAX_WORD_LETTERS {
        return Err(PresError::BadParams(format!(
            "{count} projection letters exceed {MAX_WORD_LETTERS}"
        )));
    }
    Ok(words_up_to(alphabet, max_len))
}

/// Commuting idempotent letters `a_w` with `a_w a_v = a_w` for v a prefix of
/// w, for the semilattice of projections. Returns the letter of each word.
fn add_projection_block(p: &mut Presentation, ws: &[Vec<u8>]) -> Vec<usize> {
    let letters: Vec<usize> = ws
        .iter()
        .map(|w| p.add_letter(&format!("a_{}", format_word(w))))
        .collect();
    for a in 0..ws.len() {
        for b in 0..ws.len() {
            p.add_relation(vec![letters[a], letters[b]], vec![letters[b], letters[a]]);
            if ws[a].starts_with(&ws[b]) {
                p.add_relation(vec![letters[a], letters[b]], vec![letters[a]]);
            }
        }
    }
    letters
}

/// The projection monoid of the free left restriction monoid, with letters
/// `a_w` for words of length at most `max_len`.
pub fn px_truncated(alphabet: usize, max_len: usize) -> Result<PresentationBundle, PresError> {
    let ws = words(alphabet, max_len)?;
    let mut pres = Presentation::new(Kind::Monoid);
    add_projection_block(&mut pres, &ws);
    let images = ws
        .iter()
        .map(|w| LRElement::projection(alphabet, PrefixSet::down(w)))
        .collect();
    Ok(PresentationBundle {
        name: format!("PX_truncated(|X|={alphabet},L={max_len})"),
        provenance: "Thm PX",
        pres,
        target: Target::FreeLeftRestriction { images },
        expect: Expectation::RelationsOnly,
    })
}

/// The free left restriction monoid on letters `a_w` and `x`, with
/// `x a_w = a_{xw} x` and `x = a_x x`, keeping words of length at most
/// `max_len`.
pub fn lx_truncated(alphabet: usize, max_len: usize) -> Result<PresentationBundle, PresError> {
    let ws = words(alphabet, max_len)?;
    let mut pres = Presentation::new(Kind::Monoid);
    let a = add_projection_block(&mut pres, &ws);
    let mut images: Vec<LRElement> = ws
        .iter()
        .map(|w| LRElement::projection(alphabet, PrefixSet::down(w)))
        .collect();
    let index = |w: &[u8]| ws.iter().position(|v| v == w);
    for x in 0..alphabet as u8 {
        let lx = pres.add_letter(&format_word(&[x]));
        images.push(LRElement::from_word(alphabet, &[x]));
        for (i, w) in ws.iter().enumerate() {
            let xw = [&[x], w.as_slice()].concat();
            if let Some(j) = index(&xw) {
                pres.add_relation(vec![lx, a[i]], vec![a[j], lx]);
            }
        }
        let ax = index(&[x]).expect("single letters are kept");
        pres.add_relation(vec![lx], vec![a[ax], lx]);
    }
    Ok(PresentationBundle {
        name: format!("LX_truncated(|X|={alphabet},L={max_len})"),
        provenance: "Thm LX",
        pres,
        target: Target::FreeLeftRestriction { images },
        expect: Expectation::RelationsOnly,
    })
}

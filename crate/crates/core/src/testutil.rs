use crate::oracle::SpecialPresentation;
use crate::special::Session;
use crate::words::{Alphabet, Word};

pub(crate) fn session(alpha: &str, rels: &[&str]) -> Session {
    let a = Alphabet::from_chars(alpha).unwrap();
    let rels = rels.iter().map(|r| a.parse_word(r).unwrap()).collect();
    Session::with_defaults(SpecialPresentation::new(a, rels).unwrap())
}

pub(crate) fn w(s: &Session, t: &str) -> Word {
    s.alphabet().parse_word(t).unwrap()
}

//! Computations in finitely presented special monoids `⟨A | w_1 = 1, …, w_k = 1⟩`.

pub mod bicayley;
pub mod biset;
pub mod homreport;
pub mod oracle;
pub mod special;
pub mod words;

#[cfg(test)]
pub(crate) mod testutil;

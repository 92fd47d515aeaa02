//! Formal direct sums with multiplicities in `ℕ ∪ {ω}` and the symbolic
//! construction of an equivalent good tilting module.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A multiplicity: a positive integer or the countable cardinal `ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mult {
    Finite(u64),
    Omega,
}

impl Mult {
    /// Cardinal sum: anything plus `ω` is `ω`.
    pub fn add(self, other: Mult) -> Mult {
        match (self, other) {
            (Mult::Finite(a), Mult::Finite(b)) => Mult::Finite(a + b),
            _ => Mult::Omega,
        }
    }

    /// Cardinal product with `ω` for positive multiplicities.
    pub fn times(self, other: Mult) -> Mult {
        match (self, other) {
            (Mult::Finite(a), Mult::Finite(b)) => Mult::Finite(a * b),
            _ => Mult::Omega,
        }
    }

    pub fn is_positive(self) -> bool {
        self != Mult::Finite(0)
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Finite(k) => write!(f, "{k}"),
            Mult::Omega => write!(f, "ω"),
        }
    }
}

/// `X_1^(m_1) ⊕ … ⊕ X_k^(m_k)`; symbols may repeat only in an unnormalized
/// sum (as written before an absorption step).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalSum {
    pub terms: Vec<(String, Mult)>,
}

impl FormalSum {
    pub fn symbol(s: &str) -> FormalSum {
        FormalSum { terms: vec![(s.to_string(), Mult::Finite(1))] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Concatenation, without merging repeated symbols.
    pub fn concat(&self, other: &FormalSum) -> FormalSum {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        FormalSum { terms }
    }

    /// `(⊕ X_i^(m_i))^(ω) = ⊕ X_i^(ω)`.
    pub fn omega_power(&self) -> FormalSum {
        FormalSum { terms: self.terms.iter().map(|(s, m)| (s.clone(), m.times(Mult::Omega))).collect() }
    }

    /// Merges repeated symbols by cardinal addition, keeping first-occurrence
    /// order; returns the absorptions performed, e.g. `T1 ⊕ T1^(ω) = T1^(ω)`.
    pub fn normalize(&self) -> (FormalSum, Vec<String>) {
        let mut out: Vec<(String, Mult)> = Vec::new();
        let mut laws = Vec::new();
        for (s, m) in &self.terms {
            if let Some(slot) = out.iter_mut().find(|(t, _)| t == s) {
                let sum = slot.1.add(*m);
                if slot.1 == Mult::Omega && *m == Mult::Omega {
                    assert_eq!(sum, Mult::Omega, "ω + ω = ω");
                }
                laws.push(format!(
                    "{} ⊕ {} = {}",
                    render_term(s, slot.1),
                    render_term(s, *m),
                    render_term(s, sum)
                ));
                slot.1 = sum;
            } else {
                out.push((s.clone(), *m));
            }
        }
        (FormalSum { terms: out }, laws)
    }

    pub fn is_normalized(&self) -> bool {
        self.terms.iter().enumerate().all(|(i, (s, m))| m.is_positive() && self.terms[..i].iter().all(|(t, _)| t != s))
    }

    pub fn multiplicity(&self, s: &str) -> Option<Mult> {
        self.terms.iter().find(|(t, _)| t == s).map(|(_, m)| *m)
    }
}

fn render_term(s: &str, m: Mult) -> String {
    match m {
        Mult::Finite(1) => s.to_string(),
        Mult::Finite(k) => format!("{s}^({k})"),
        Mult::Omega => format!("{s}^(ω)"),
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(s, m)| render_term(s, *m)).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// `0 → R → X_0 → … → X_k → 0`; `terms[0]` is the marker `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalExactSequence {
    pub terms: Vec<FormalSum>,
}

impl FormalExactSequence {
    /// `0 → R → T_0 → … → T_n → 0` from plain symbols.
    pub fn from_symbols(symbols: &[&str]) -> FormalExactSequence {
        let mut terms = vec![FormalSum::symbol("R")];
        terms.extend(symbols.iter().map(|s| FormalSum::symbol(s)));
        FormalExactSequence { terms }
    }

    /// `k`, the index of the last term.
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(2)
    }

    pub fn validate(&self) -> Result<()> {
        if self.terms.len() < 2 {
            return Err(Error::Precondition("a coresolution needs R and at least one term".into()));
        }
        if self.terms[0] != FormalSum::symbol("R") {
            return Err(Error::Precondition("the first term must be the marker R".into()));
        }
        for (i, t) in self.terms[1..].iter().enumerate() {
            if t.is_zero() {
                return Err(Error::Precondition(format!("term {i} is empty")));
            }
            if !t.is_normalized() {
                return Err(Error::Precondition(format!("term {i} repeats a symbol or has multiplicity 0")));
            }
            if t.multiplicity("R").is_some() {
                return Err(Error::Precondition(format!("term {i} uses the reserved symbol R")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for FormalExactSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0")?;
        for t in &self.terms {
            write!(f, " → {t}")?;
        }
        write!(f, " → 0")
    }
}

/// One rewriting stage: the sequence obtained by adding `X_{p+1}^(ω)` to
/// two consecutive terms, and its form after absorbing repeated symbols.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStage {
    pub position: usize,
    pub before: FormalExactSequence,
    pub after: FormalExactSequence,
    pub absorptions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodTilt {
    pub module: FormalSum,
    pub trace: Vec<RewriteStage>,
}

/// Symbolic good tilting module `T_0 ⊕ T_1^(ω) ⊕ … ⊕ T_n^(ω)`.
///
/// Stage `k` (for `p = n − k`) adds the split exact sequence
/// `0 → X_{p+1}^(ω) = X_{p+1}^(ω) → 0` in positions `p`, `p + 1`, then
/// rewrites `X_{p+1} ⊕ X_{p+1}^(ω)` as `X_{p+1}^(ω)`.
pub fn good_tilt_formal(cores: &FormalExactSequence) -> Result<GoodTilt> {
    cores.validate()?;
    let n = cores.length();
    // xs[j] = X_j
    let mut xs: Vec<FormalSum> = cores.terms[1..].to_vec();
    let mut trace = Vec::with_capacity(n);
    for p in (0..n).rev() {
        let extra = xs[p + 1].omega_power();
        let mut raw = xs.clone();
        raw[p] = xs[p].concat(&extra);
        raw[p + 1] = xs[p + 1].concat(&extra);
        let mut absorptions = Vec::new();
        let mut next = raw.clone();
        for j in [p, p + 1] {
            let (norm, laws) = raw[j].normalize();
            absorptions.extend(laws);
            next[j] = norm;
        }
        let wrap = |v: &[FormalSum]| {
            let mut terms = vec![FormalSum::symbol("R")];
            terms.extend(v.iter().cloned());
            FormalExactSequence { terms }
        };
        trace.push(RewriteStage { position: p, before: wrap(&raw), after: wrap(&next), absorptions });
        xs = next;
    }
    Ok(GoodTilt { module: xs[0].clone(), trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms(n: usize) -> Vec<String> {
        (0..=n).map(|i| format!("T{i}")).collect()
    }

    #[test]
    fn cardinal_laws() {
        use Mult::*;
        assert_eq!(Omega.add(Omega), Omega);
        assert_eq!(Finite(3).add(Omega), Omega);
        assert_eq!(Omega.add(Finite(1)), Omega);
        assert_eq!(Finite(2).add(Finite(3)), Finite(5));
    }

    #[test]
    fn constructor_shapes() {
        for n in 0..=3 {
            let s = syms(n);
            let refs: Vec<&str> = s.iter().map(|x| x.as_str()).collect();
            let g = good_tilt_formal(&FormalExactSequence::from_symbols(&refs)).unwrap();
            assert_eq!(g.trace.len(), n);
            assert_eq!(g.module.multiplicity("T0"), Some(Mult::Finite(1)));
            for sym in &s[1..] {
                assert_eq!(g.module.multiplicity(sym), Some(Mult::Omega));
            }
            let expected: Vec<String> = std::iter::once("T0".to_string()).chain(s[1..].iter().map(|x| format!("{x}^(ω)"))).collect();
            assert_eq!(g.module.to_string(), expected.join(" ⊕ "));
            for st in &g.trace {
                for t in &st.after.terms[1..] {
                    assert!(t.terms.iter().all(|(_, m)| matches!(m, Mult::Finite(1) | Mult::Omega)));
                }
            }
        }
    }

    #[test]
    fn second_degree_trace() {
        let g = good_tilt_formal(&FormalExactSequence::from_symbols(&["T0", "T1", "T2"])).unwrap();
        assert_eq!(g.trace[0].before.to_string(), "0 → R → T0 → T1 ⊕ T2^(ω) → T2 ⊕ T2^(ω) → 0");
        assert_eq!(g.trace[0].after.to_string(), "0 → R → T0 → T1 ⊕ T2^(ω) → T2^(ω) → 0");
        assert_eq!(g.trace[1].after.to_string(), "0 → R → T0 ⊕ T1^(ω) ⊕ T2^(ω) → T1^(ω) ⊕ T2^(ω) → T2^(ω) → 0");
        assert!(g.trace[1].absorptions.iter().any(|l| l == "T2^(ω) ⊕ T2^(ω) = T2^(ω)"));
    }

    #[test]
    fn zero_length_is_already_good() {
        let g = good_tilt_formal(&FormalExactSequence::from_symbols(&["T0"])).unwrap();
        assert!(g.trace.is_empty());
        assert_eq!(g.module.to_string(), "T0");
    }

    #[test]
    fn malformed_sequences() {
        assert!(good_tilt_formal(&FormalExactSequence { terms: vec![] }).is_err());
        let mut s = FormalExactSequence::from_symbols(&["T0", "T1"]);
        s.terms[0] = FormalSum::symbol("X");
        assert!(good_tilt_formal(&s).is_err());
        let s = FormalExactSequence::from_symbols(&["T0", "R"]);
        assert!(good_tilt_formal(&s).is_err());
    }
}

use std::collections::BTreeSet;

use super::stream::open_formula_from_index;
use super::ConstructionError;
use crate::syntax::{canonical_contradiction, substitute, verum, Formula, Term};
use crate::theory::OrderDecider;

/// Derivability from a fixed base theory, total on sentences.
pub trait BaseDecider {
    fn derives(&mut self, s: &Formula) -> Result<bool, ConstructionError>;
}

impl BaseDecider for OrderDecider {
    fn derives(&mut self, s: &Formula) -> Result<bool, ConstructionError> {
        Ok(self.decide(s)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Asserted,
    Negated,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CompletionState {
    /// `(phi_j, polarity)` for every processed `j`, in order.
    pub committed: Vec<(Formula, Polarity)>,
    pub next_index: u64,
}

impl CompletionState {
    /// The committed sentence for step `j`: `phi_j` or `~phi_j`.
    pub fn sentence(&self, j: usize) -> Option<Formula> {
        self.committed.get(j).map(|(phi, pol)| match pol {
            Polarity::Asserted => phi.clone(),
            Polarity::Negated => Formula::not(phi.clone()),
        })
    }

    /// Left-nested conjunction of everything committed (`0 = 0` when empty).
    pub fn conjunction(&self) -> Formula {
        (0..self.committed.len())
            .filter_map(|j| self.sentence(j))
            .reduce(Formula::and)
            .unwrap_or_else(verum)
    }

    /// Whether `phi` belongs to the completed theory, for processed `phi`.
    pub fn decide(&self, phi: &Formula) -> Option<bool> {
        self.committed
            .iter()
            .find(|(f, _)| f == phi)
            .map(|(_, pol)| *pol == Polarity::Asserted)
    }

    /// Whether base plus the committed sentences stays short of the
    /// canonical contradiction.
    pub fn is_consistent(&self, base: &mut dyn BaseDecider) -> Result<bool, ConstructionError> {
        let f = Formula::imp(self.conjunction(), canonical_contradiction());
        Ok(!base.derives(&f)?)
    }
}

/// Processes the first `count` sentences of `stream`: `phi_j` is committed
/// when base plus the earlier commitments does not derive `~phi_j`, and
/// `~phi_j` is committed otherwise.
pub fn henkin_complete<S>(
    base: &mut dyn BaseDecider,
    mut stream: S,
    count: u64,
) -> Result<CompletionState, ConstructionError>
where
    S: FnMut(u64) -> Formula,
{
    if base.derives(&canonical_contradiction())? {
        return Err(ConstructionError::InconsistentBase);
    }
    let mut state = CompletionState::default();
    for j in 0..count {
        step(base, &mut state, stream(j))?;
    }
    Ok(state)
}

fn step(base: &mut dyn BaseDecider, state: &mut CompletionState, phi: Formula) -> Result<(), ConstructionError> {
    let refutes = Formula::imp(state.conjunction(), Formula::not(phi.clone()));
    let pol = if base.derives(&refutes)? {
        Polarity::Negated
    } else {
        Polarity::Asserted
    };
    state.committed.push((phi, pol));
    state.next_index += 1;
    Ok(())
}

/// Decides `phi_index` by rerunning the construction up to that index.
pub fn replay_decide<S>(
    base: &mut dyn BaseDecider,
    stream: S,
    index: u64,
) -> Result<bool, ConstructionError>
where
    S: FnMut(u64) -> Formula,
{
    let state = henkin_complete(base, stream, index + 1)?;
    Ok(state.committed[index as usize].1 == Polarity::Asserted)
}

/// Identifiers `c1, c2, ...` play the role of the fresh constants.
pub fn is_constant(name: &str) -> bool {
    name.strip_prefix('c')
        .is_some_and(|d| !d.is_empty() && !d.starts_with('0') && d.bytes().all(|b| b.is_ascii_digit()))
}

fn names_in(f: &Formula, out: &mut BTreeSet<String>) {
    out.extend(f.all_vars());
}

fn existential_pairs(f: &Formula, out: &mut Vec<(Formula, String)>) {
    f.visit(&mut |g| {
        if let Formula::Exists(x, body) = g {
            if body.free_vars().iter().all(|v| v == x || is_constant(v)) {
                out.push(((**body).clone(), x.clone()));
            }
        }
    });
}

/// Adds the Henkin axioms `E x. phi -> phi[c/x]` for the first `budget`
/// pairs `(phi, x)` with exactly `x` free: first the existential
/// subformulas of the theory in order, then the canonical formula stream.
/// Each axiom takes the first constant not occurring in the theory or in any
/// earlier axiom.
pub fn henkinize(theory: &[Formula], budget: usize) -> Vec<Formula> {
    let mut out = theory.to_vec();
    if budget == 0 {
        return out;
    }
    let mut used = BTreeSet::new();
    for f in theory {
        names_in(f, &mut used);
    }
    let mut pairs = Vec::new();
    for f in theory {
        existential_pairs(f, &mut pairs);
    }
    let mut pairs = pairs.into_iter();
    let mut n = 0u64;
    let mut next_pair = move || -> (Formula, String) {
        if let Some(p) = pairs.next() {
            return p;
        }
        loop {
            let f = open_formula_from_index(n);
            n += 1;
            let free: Vec<String> = f.free_vars().into_iter().collect();
            match free.as_slice() {
                [x] => return (f, x.clone()),
                _ => continue,
            }
        }
    };
    let mut k = 1u64;
    for _ in 0..budget {
        let (phi, x) = next_pair();
        let mut mentioned = used.clone();
        names_in(&phi, &mut mentioned);
        while mentioned.contains(&format!("c{k}")) {
            k += 1;
        }
        let c = format!("c{k}");
        k += 1;
        let ax = Formula::imp(
            Formula::exists(&x, phi.clone()),
            substitute(&phi, &x, &Term::var(&c)),
        );
        names_in(&ax, &mut used);
        out.push(ax);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::formula_from_index;
    use crate::syntax::parse_sentence;

    #[test]
    fn first_henkin_axiom() {
        let th = vec![parse_sentence("E x. 0 < x").unwrap()];
        assert_eq!(henkinize(&th, 0), th);
        let out = henkinize(&th, 1);
        assert_eq!(out.len(), 2);
        assert_eq!(out[1].to_string(), "E x. 0 < x -> 0 < c1");
    }

    #[test]
    fn constants_are_fresh() {
        let th = vec![
            crate::syntax::parse_formula("E x. (x < c1 & E y. x < y)").unwrap(),
        ];
        let out = henkinize(&th, 40);
        let mut seen: BTreeSet<String> = th[0].all_vars();
        for ax in &out[1..] {
            let Formula::Imp(_, inst) = ax else { panic!() };
            let Formula::Imp(pre, _) = ax else { panic!() };
            let fresh: Vec<String> = inst
                .free_vars()
                .into_iter()
                .filter(|v| is_constant(v) && !pre.all_vars().contains(v))
                .collect();
            assert_eq!(fresh.len(), 1, "{ax}");
            assert!(!seen.contains(&fresh[0]), "{ax} reuses {}", fresh[0]);
            seen.extend(ax.all_vars());
        }
    }

    #[test]
    fn universal_equality_is_refuted() {
        let first = parse_sentence("A x. A y. x = y").unwrap();
        let mut base = OrderDecider::new();
        let st = henkin_complete(
            &mut base,
            |j| if j == 0 { first.clone() } else { formula_from_index(j) },
            5,
        )
        .unwrap();
        assert_eq!(st.committed[0].1, Polarity::Negated);
    }

    #[test]
    fn base_axioms_are_asserted_and_state_stays_consistent() {
        let axioms = crate::syntax::order_axioms();
        let mut base = OrderDecider::new();
        let st = henkin_complete(&mut base, |j| axioms[j as usize].clone(), 6).unwrap();
        assert!(st.committed.iter().all(|(_, p)| *p == Polarity::Asserted));
        assert!(st.is_consistent(&mut base).unwrap());
    }

    struct Everything;
    impl BaseDecider for Everything {
        fn derives(&mut self, _: &Formula) -> Result<bool, ConstructionError> {
            Ok(true)
        }
    }

    #[test]
    fn inconsistent_base_is_refused() {
        assert_eq!(
            henkin_complete(&mut Everything, formula_from_index, 3),
            Err(ConstructionError::InconsistentBase)
        );
    }
}

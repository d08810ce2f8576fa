//! Behavior-preserving machine surgeries: flattening weights to 1, funneling
//! acceptance through a single state, counting accept/reject gaps, and
//! mapping weights through a semiring homomorphism.

use std::collections::BTreeSet;

use num::ToPrimitive;

use crate::algebra::hom::Homomorphism;
use crate::algebra::{literal, SemiringHandle, SemiringId, Value};
use crate::error::{Error, Result};
use crate::words::Symbol;

use super::{Machine, PolyBound, Transition};

/// A name not used by any state or symbol of `machine`, starting from `base`.
fn fresh_name(base: &str, machine: &Machine, also: &BTreeSet<Symbol>) -> Symbol {
    let taken = |name: &str| {
        machine.states.iter().any(|q| q == name)
            || machine.work_alphabet.iter().any(|s| s == name)
            || also.contains(name)
    };
    if !taken(base) {
        return base.to_string();
    }
    (1u64..)
        .map(|i| format!("{base}{i}"))
        .find(|name| !taken(name))
        .expect("unbounded name supply")
}

/// The symbol a verdict or funnel step writes when stalled on `read`: the
/// symbol itself, except that the blank (which is never written) is replaced
/// by the machine's first input symbol.
fn writable(machine: &Machine, read: &Symbol) -> Symbol {
    if *read == machine.blank {
        machine.input_alphabet[0].clone()
    } else {
        read.clone()
    }
}

/// Splits every weight-`v` transition of a machine over the naturals into
/// `v` parallel two-step unit-weight paths through fresh intermediate
/// states.  The behavior is unchanged: the `v` copies make the path counts
/// multiply back to the original products.  The declared bound doubles.
pub fn normalize_unit_weights(machine: &Machine) -> Result<Machine> {
    machine.validate()?;
    if machine.semiring.id() != &SemiringId::Nat {
        return Err(Error::DomainMismatch(format!(
            "unit-weight normalization needs a machine over nat, got {}",
            machine.semiring
        )));
    }
    let one = machine.semiring.one();
    let mut out = machine.clone();
    out.transitions = Vec::new();
    let mut minted: BTreeSet<Symbol> = BTreeSet::new();
    for (t_index, t) in machine.transitions.iter().enumerate() {
        let copies = match t.weight.value() {
            Value::Nat(n) => n.to_u64().ok_or_else(|| {
                Error::CapExceeded(format!("transition weight {n} is too large to unfold"))
            })?,
            _ => unreachable!("nat machine carries nat weights"),
        };
        // The intermediate cell content: what was read, unless that was the
        // blank, in which case the final write symbol stands in (both are
        // re-read immediately, so the tape ends up exactly as before).
        let mid_symbol = if t.read == machine.blank { t.write.clone() } else { t.read.clone() };
        for copy in 0..copies {
            let mid = fresh_name(&format!("u{t_index}c{copy}"), machine, &minted);
            minted.insert(mid.clone());
            out.transitions.push(Transition {
                from: t.from.clone(),
                read: t.read.clone(),
                to: mid.clone(),
                write: mid_symbol.clone(),
                movement: 0,
                weight: one.clone(),
            });
            out.transitions.push(Transition {
                from: mid,
                read: mid_symbol.clone(),
                to: t.to.clone(),
                write: t.write.clone(),
                movement: t.movement,
                weight: one.clone(),
            });
        }
    }
    out.states.extend(minted);
    out.bound = machine.bound.map(|b| PolyBound { c: 2 * b.c, k: b.k, d: 2 * b.d });
    out.validate()?;
    Ok(out)
}

/// Redirects every accepting state through a single fresh accepting state:
/// each formerly accepting state gets a unit-weight stay-put step to the new
/// one on every symbol.  Each accepting computation is extended by exactly
/// one weight-1 step, so the behavior is unchanged and the bound grows by 1.
pub fn single_accepting(machine: &Machine) -> Result<Machine> {
    machine.validate()?;
    let q_acc = fresh_name("qacc", machine, &BTreeSet::new());
    let one = machine.semiring.one();
    let mut out = machine.clone();
    for q in &machine.accepting {
        for c in &machine.work_alphabet {
            out.transitions.push(Transition {
                from: q.clone(),
                read: c.clone(),
                to: q_acc.clone(),
                write: writable(machine, c),
                movement: 0,
                weight: one.clone(),
            });
        }
    }
    out.states.push(q_acc.clone());
    out.accepting = [q_acc].into();
    out.bound = machine.bound.map(|b| PolyBound { c: b.c, k: b.k, d: b.d + 1 });
    out.validate()?;
    Ok(out)
}

/// Turns a Boolean machine whose maximal computations all end in a verdict
/// state into a machine over the integers whose behavior coefficient is the
/// signed verdict count: accepting computations contribute +1 and rejecting
/// ones −1.  Every stalled verdict pair gets one extra step into a fresh
/// accepting state, weighted +1 from accepting states and −1 from rejecting
/// ones; all other weights become 1.
pub fn gap_machine(machine: &Machine) -> Result<Machine> {
    machine.validate()?;
    if machine.semiring.id() != &SemiringId::Bool {
        return Err(Error::DomainMismatch(format!(
            "gap counting needs a Boolean machine, got {}",
            machine.semiring
        )));
    }
    let int = SemiringHandle::int();
    let plus_one = int.one();
    let minus_one = literal::parse(&int, "-1")?;
    let q_acc = fresh_name("qgap", machine, &BTreeSet::new());
    let mut transitions: Vec<Transition> = machine
        .transitions
        .iter()
        .map(|t| Transition { weight: plus_one.clone(), ..t.clone() })
        .collect();
    for q in machine.states.iter() {
        let verdict = if machine.accepting.contains(q) {
            plus_one.clone()
        } else if machine.rejecting.contains(q) {
            minus_one.clone()
        } else {
            continue;
        };
        for c in &machine.work_alphabet {
            let stalled = !machine.transitions.iter().any(|t| t.from == *q && t.read == *c);
            if stalled {
                transitions.push(Transition {
                    from: q.clone(),
                    read: c.clone(),
                    to: q_acc.clone(),
                    write: writable(machine, c),
                    movement: 0,
                    weight: verdict.clone(),
                });
            }
        }
    }
    let mut states = machine.states.clone();
    states.push(q_acc.clone());
    let out = Machine {
        semiring: int,
        states,
        accepting: [q_acc].into(),
        rejecting: BTreeSet::new(),
        transitions,
        bound: machine.bound.map(|b| PolyBound { c: b.c, k: b.k, d: b.d + 1 }),
        ..machine.clone()
    };
    out.validate()?;
    Ok(out)
}

/// Maps every transition weight through `hom`.  Transitions whose weight
/// maps to zero are dropped: their computations would contribute zero
/// anyway, and removing them cannot make a new accepting stall because
/// accepting states never had outgoing transitions.  The resulting behavior
/// is exactly the homomorphic image of the original one.
pub fn apply_hom_machine(hom: &Homomorphism, machine: &Machine) -> Result<Machine> {
    machine.validate()?;
    if hom.source() != &machine.semiring {
        return Err(Error::DomainMismatch(format!(
            "homomorphism maps from {}, machine is over {}",
            hom.source(),
            machine.semiring
        )));
    }
    let mut transitions = Vec::new();
    for t in &machine.transitions {
        let weight = hom.apply(&t.weight)?;
        if !weight.is_zero() {
            transitions.push(Transition { weight, ..t.clone() });
        }
    }
    let out = Machine { semiring: hom.target().clone(), transitions, ..machine.clone() };
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{behavior_coeff, TapeMode};
    use crate::words::Word;

    /// a-repeater over nat: weight 2 to step right, weight 3 to accept.
    fn weighted_repeater() -> Machine {
        let nat = SemiringHandle::nat();
        let w = |s: &str| literal::parse(&nat, s).unwrap();
        let m = Machine {
            semiring: nat.clone(),
            states: vec!["q0".into(), "qf".into()],
            input_alphabet: vec!["a".into()],
            work_alphabet: vec!["a".into(), "_".into(), ">".into()],
            blank: "_".into(),
            tape: TapeMode::SemiInfinite,
            end_marker: Some(">".into()),
            initial: "q0".into(),
            accepting: ["qf".to_string()].into(),
            rejecting: BTreeSet::new(),
            transitions: vec![
                Transition {
                    from: "q0".into(),
                    read: "a".into(),
                    to: "q0".into(),
                    write: "a".into(),
                    movement: 1,
                    weight: w("2"),
                },
                Transition {
                    from: "q0".into(),
                    read: "a".into(),
                    to: "qf".into(),
                    write: "a".into(),
                    movement: 0,
                    weight: w("3"),
                },
            ],
            bound: Some(PolyBound { c: 1, k: 1, d: 2 }),
        };
        m.validate().unwrap();
        m
    }

    #[test]
    fn unit_normalization_keeps_the_behavior() {
        let m = weighted_repeater();
        let flat = normalize_unit_weights(&m).unwrap();
        let one = m.semiring.one();
        assert!(flat.transitions.iter().all(|t| t.weight == one));
        assert_eq!(flat.bound, Some(PolyBound { c: 2, k: 1, d: 4 }));
        for n in 0..4 {
            let w = Word(vec!["a".to_string(); n]);
            assert_eq!(
                behavior_coeff(&flat, &w, None).unwrap(),
                behavior_coeff(&m, &w, None).unwrap(),
                "coefficient of a^{n}"
            );
        }
    }

    #[test]
    fn unit_normalization_handles_blank_reads() {
        let nat = SemiringHandle::nat();
        let mut m = weighted_repeater();
        // Accept on the first blank past the input instead, with weight 5.
        m.transitions[1] = Transition {
            from: "q0".into(),
            read: "_".into(),
            to: "qf".into(),
            write: "a".into(),
            movement: 0,
            weight: literal::parse(&nat, "5").unwrap(),
        };
        m.validate().unwrap();
        let flat = normalize_unit_weights(&m).unwrap();
        for n in 0..3 {
            let w = Word(vec!["a".to_string(); n]);
            assert_eq!(
                behavior_coeff(&flat, &w, None).unwrap(),
                behavior_coeff(&m, &w, None).unwrap()
            );
        }
    }

    #[test]
    fn funneling_acceptance_keeps_the_behavior() {
        let m = weighted_repeater();
        let funneled = single_accepting(&m).unwrap();
        assert_eq!(funneled.accepting.len(), 1);
        assert!(!funneled.accepting.contains("qf"));
        for n in 0..4 {
            let w = Word(vec!["a".to_string(); n]);
            assert_eq!(
                behavior_coeff(&funneled, &w, None).unwrap(),
                behavior_coeff(&m, &w, None).unwrap()
            );
        }
    }

    #[test]
    fn gap_machine_counts_signed_verdicts() {
        // Boolean machine on a*: two accepting branches and one rejecting
        // branch from the first cell, so the gap on any nonempty input is 1.
        let boolean = SemiringHandle::bool_();
        let one = boolean.one();
        let m = Machine {
            semiring: boolean,
            states: vec!["q0".into(), "yes1".into(), "yes2".into(), "no".into()],
            input_alphabet: vec!["a".into()],
            work_alphabet: vec!["a".into(), "_".into(), ">".into()],
            blank: "_".into(),
            tape: TapeMode::SemiInfinite,
            end_marker: Some(">".into()),
            initial: "q0".into(),
            accepting: ["yes1".to_string(), "yes2".to_string()].into(),
            rejecting: ["no".to_string()].into(),
            transitions: vec![
                Transition { from: "q0".into(), read: "a".into(), to: "yes1".into(), write: "a".into(), movement: 0, weight: one.clone() },
                Transition { from: "q0".into(), read: "a".into(), to: "yes2".into(), write: "a".into(), movement: 0, weight: one.clone() },
                Transition { from: "q0".into(), read: "a".into(), to: "no".into(), write: "a".into(), movement: 0, weight: one.clone() },
                Transition { from: "q0".into(), read: "_".into(), to: "no".into(), write: "a".into(), movement: 0, weight: one.clone() },
            ],
            bound: Some(PolyBound { c: 1, k: 1, d: 2 }),
        };
        m.validate().unwrap();
        let gap = gap_machine(&m).unwrap();
        let int = SemiringHandle::int();
        let a = Word::from(vec!["a"]);
        assert_eq!(behavior_coeff(&gap, &a, None).unwrap(), literal::parse(&int, "1").unwrap());
        assert_eq!(
            behavior_coeff(&gap, &Word::empty(), None).unwrap(),
            literal::parse(&int, "-1").unwrap()
        );
    }

    #[test]
    fn weight_mapping_commutes_with_behavior() {
        let m = weighted_repeater();
        let hom = Homomorphism::nat_to_mod(2).unwrap();
        let mapped = apply_hom_machine(&hom, &m).unwrap();
        // The weight-2 step maps to zero and is dropped.
        assert_eq!(mapped.transitions.len(), 1);
        for n in 0..4 {
            let w = Word(vec!["a".to_string(); n]);
            assert_eq!(
                behavior_coeff(&mapped, &w, None).unwrap(),
                hom.apply(&behavior_coeff(&m, &w, None).unwrap()).unwrap(),
                "image of the coefficient of a^{n}"
            );
        }
    }
}

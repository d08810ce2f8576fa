//! The machine-evaluation problem as a weighted language over plain text.
//!
//! An instance is `<machine JSON>#<word>#<unary step budget>`, with the
//! machine's weights written as generator terms so the whole instance is a
//! string over a fixed alphabet.  Its value is the sum of the values of the
//! machine's accepting computations of at most the budgeted length —
//! computations still running at the budget contribute nothing.  Splitting
//! happens at the last two `#` separators, so `#` is banned from state and
//! symbol names at encoding time.

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::machine::format::{machine_from_json, machine_to_json, WeightSyntax};
use crate::machine::{sum_accepting_within, Machine};
use crate::words::Word;

pub fn wtmsat_encode(machine: &Machine, word: &Word, steps: u64) -> Result<String> {
    machine.validate()?;
    for name in machine.states.iter().chain(machine.work_alphabet.iter()) {
        if name.contains('#') {
            return Err(Error::validate(format!(
                "{name:?} contains '#', the instance separator"
            )));
        }
    }
    word.validate(&machine.input_alphabet)?;
    let json = machine_to_json(machine, WeightSyntax::Term)?;
    let word_text = if word.is_empty() { String::new() } else { word.display_compact() };
    Ok(format!("{json}#{word_text}#{}", "1".repeat(steps as usize)))
}

pub fn wtmsat_value(instance: &str) -> Result<Element> {
    let mut parts = instance.rsplitn(3, '#');
    let unary = parts.next().expect("rsplitn yields at least one part");
    let (Some(word_text), Some(machine_json)) = (parts.next(), parts.next()) else {
        return Err(Error::parse(
            "an instance needs two '#' separators: machine, word, unary budget",
        ));
    };
    if unary.bytes().any(|b| b != b'1') {
        return Err(Error::parse("the step budget must be a run of 1s"));
    }
    let steps = unary.len() as u64;
    let machine = machine_from_json(machine_json, WeightSyntax::Term)?;
    let word = Word::parse(word_text.trim(), &machine.input_alphabet)?;
    sum_accepting_within(&machine, &word, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{literal, SemiringHandle};
    use crate::machine::behavior_coeff;
    use crate::reduce::tests::scanner;

    fn a_word(n: usize) -> Word {
        Word(vec!["a".to_string(); n])
    }

    #[test]
    fn instances_reproduce_behavior_coefficients() {
        let sr = SemiringHandle::nat();
        let nf = scanner(&sr, "2", "3");
        for n in 0..3 {
            let w = a_word(n);
            let f = nf.bound().eval(n).unwrap();
            let instance = wtmsat_encode(nf.machine(), &w, f).unwrap();
            assert_eq!(
                wtmsat_value(&instance).unwrap(),
                behavior_coeff(nf.machine(), &w, None).unwrap(),
                "budget {f} on a^{n}"
            );
        }
    }

    #[test]
    fn short_budgets_truncate_instead_of_failing() {
        let sr = SemiringHandle::nat();
        let nf = scanner(&sr, "2", "3");
        let w = a_word(2);
        // Within one step only the immediate accept fits; the walk-right
        // branch is cut off and contributes nothing.
        let one_step = wtmsat_encode(nf.machine(), &w, 1).unwrap();
        assert_eq!(wtmsat_value(&one_step).unwrap(), literal::parse(&sr, "3").unwrap());
        let no_steps = wtmsat_encode(nf.machine(), &w, 0).unwrap();
        assert!(wtmsat_value(&no_steps).unwrap().is_zero());
    }

    #[test]
    fn separator_clashes_are_rejected_at_encoding() {
        let sr = SemiringHandle::nat();
        let mut machine = scanner(&sr, "2", "3").machine().clone();
        machine.states[0] = "q#0".into();
        for t in &mut machine.transitions {
            if t.from == "q0" {
                t.from = "q#0".into();
            }
            if t.to == "q0" {
                t.to = "q#0".into();
            }
        }
        machine.initial = "q#0".into();
        assert!(wtmsat_encode(&machine, &a_word(1), 3).is_err());
    }

    #[test]
    fn malformed_instances_are_rejected() {
        assert!(wtmsat_value("no separators here").is_err());
        assert!(wtmsat_value("only#one").is_err());
        let sr = SemiringHandle::nat();
        let nf = scanner(&sr, "2", "3");
        let good = wtmsat_encode(nf.machine(), &a_word(1), 3).unwrap();
        let bad_budget = format!("{good}101");
        assert!(wtmsat_value(&bad_budget).is_err());
        // A word outside the input alphabet.
        let bad_word = good.replace("#a#", "#b#");
        assert!(wtmsat_value(&bad_word).is_err());
    }

    #[test]
    fn empty_words_round_trip() {
        let sr = SemiringHandle::nat();
        let nf = scanner(&sr, "2", "3");
        let instance = wtmsat_encode(nf.machine(), &Word::empty(), 2).unwrap();
        assert!(instance.contains("##"));
        assert!(wtmsat_value(&instance).unwrap().is_zero());
    }
}

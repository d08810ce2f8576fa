//! Machine files: a stable JSON shape with weights written either as
//! element literals or as generator terms.  Serialization is deterministic —
//! fixed key order, sorted state sets, canonical weight text — so equal
//! machines produce byte-identical files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::term::{self, encode_tau};
use crate::algebra::{literal, parse_spec, Element, SemiringHandle};
use crate::error::{Error, Result};

use super::{Machine, PolyBound, TapeMode, Transition};

/// How transition weights appear in a file: as canonical element literals,
/// or as terms over the semiring's generators (the form used when machines
/// are embedded into satisfiability instances).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSyntax {
    Literal,
    Term,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransitionFile {
    from: String,
    read: String,
    to: String,
    write: String,
    #[serde(rename = "move")]
    movement: i8,
    weight: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundFile {
    c: u64,
    k: u32,
    d: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MachineFile {
    semiring: String,
    tape: String,
    states: Vec<String>,
    input_alphabet: Vec<String>,
    work_alphabet: Vec<String>,
    blank: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    end_marker: Option<String>,
    initial: String,
    accepting: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    rejecting: Vec<String>,
    transitions: Vec<TransitionFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bound: Option<BoundFile>,
}

fn weight_text(weight: &Element, syntax: WeightSyntax) -> Result<String> {
    match syntax {
        WeightSyntax::Literal => Ok(literal::print(weight)),
        WeightSyntax::Term => Ok(encode_tau(weight.semiring(), weight)?.to_string()),
    }
}

fn parse_weight(semiring: &SemiringHandle, text: &str, syntax: WeightSyntax) -> Result<Element> {
    match syntax {
        WeightSyntax::Literal => literal::parse(semiring, text),
        WeightSyntax::Term => term::parse(text)?.eval(semiring),
    }
}

pub fn machine_to_json(machine: &Machine, syntax: WeightSyntax) -> Result<String> {
    machine.validate()?;
    let file = MachineFile {
        semiring: machine.semiring.id().to_string(),
        tape: machine.tape.name().to_string(),
        states: machine.states.clone(),
        input_alphabet: machine.input_alphabet.clone(),
        work_alphabet: machine.work_alphabet.clone(),
        blank: machine.blank.clone(),
        end_marker: machine.end_marker.clone(),
        initial: machine.initial.clone(),
        accepting: machine.accepting.iter().cloned().collect(),
        rejecting: machine.rejecting.iter().cloned().collect(),
        transitions: machine
            .transitions
            .iter()
            .map(|t| {
                Ok(TransitionFile {
                    from: t.from.clone(),
                    read: t.read.clone(),
                    to: t.to.clone(),
                    write: t.write.clone(),
                    movement: t.movement,
                    weight: weight_text(&t.weight, syntax)?,
                })
            })
            .collect::<Result<_>>()?,
        bound: machine.bound.map(|b| BoundFile { c: b.c, k: b.k, d: b.d }),
    };
    let mut text = serde_json::to_string_pretty(&file)
        .map_err(|e| Error::parse(format!("machine serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn machine_from_json(text: &str, syntax: WeightSyntax) -> Result<Machine> {
    let file: MachineFile =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("bad machine file: {e}")))?;
    let semiring = parse_spec(&file.semiring)?;
    let tape = match file.tape.as_str() {
        "two-way" => TapeMode::TwoWay,
        "semi-infinite" => TapeMode::SemiInfinite,
        other => {
            return Err(Error::parse(format!(
                "tape must be \"two-way\" or \"semi-infinite\", got {other:?}"
            )))
        }
    };
    let machine = Machine {
        transitions: file
            .transitions
            .iter()
            .map(|t| {
                Ok(Transition {
                    from: t.from.clone(),
                    read: t.read.clone(),
                    to: t.to.clone(),
                    write: t.write.clone(),
                    movement: t.movement,
                    weight: parse_weight(&semiring, &t.weight, syntax)?,
                })
            })
            .collect::<Result<_>>()?,
        semiring,
        states: file.states,
        input_alphabet: file.input_alphabet,
        work_alphabet: file.work_alphabet,
        blank: file.blank,
        tape,
        end_marker: file.end_marker,
        initial: file.initial,
        accepting: file.accepting.into_iter().collect(),
        rejecting: file.rejecting.into_iter().collect(),
        bound: file.bound.map(|b| PolyBound { c: b.c, k: b.k, d: b.d }),
    };
    machine.validate()?;
    Ok(machine)
}

pub fn load_machine(path: &Path) -> Result<Machine> {
    let text = std::fs::read_to_string(path)?;
    machine_from_json(&text, WeightSyntax::Literal)
}

pub fn save_machine(path: &Path, machine: &Machine) -> Result<()> {
    std::fs::write(path, machine_to_json(machine, WeightSyntax::Literal)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn sample() -> Machine {
        let nat = SemiringHandle::nat();
        Machine {
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
            transitions: vec![Transition {
                from: "q0".into(),
                read: "a".into(),
                to: "qf".into(),
                write: "a".into(),
                movement: 0,
                weight: literal::parse(&nat, "5").unwrap(),
            }],
            bound: Some(PolyBound { c: 1, k: 1, d: 2 }),
        }
    }

    #[test]
    fn literal_round_trip_is_byte_stable() {
        let m = sample();
        let json = machine_to_json(&m, WeightSyntax::Literal).unwrap();
        let back = machine_from_json(&json, WeightSyntax::Literal).unwrap();
        assert_eq!(back, m);
        assert_eq!(machine_to_json(&back, WeightSyntax::Literal).unwrap(), json);
        assert!(json.contains("\"move\": 0"));
        assert!(json.contains("\"weight\": \"5\""));
    }

    #[test]
    fn term_weights_round_trip_through_generators() {
        let m = sample();
        let json = machine_to_json(&m, WeightSyntax::Term).unwrap();
        assert!(json.contains("(1 + ((1 + 1) * (1 + 1)))"), "5 in binary term form: {json}");
        let back = machine_from_json(&json, WeightSyntax::Term).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn malformed_files_are_rejected() {
        let m = sample();
        let json = machine_to_json(&m, WeightSyntax::Literal).unwrap();
        let bad_move = json.replace("\"move\": 0", "\"move\": 2");
        assert!(machine_from_json(&bad_move, WeightSyntax::Literal).is_err());
        let bad_key = json.replace("\"blank\"", "\"blanks\"");
        assert!(machine_from_json(&bad_key, WeightSyntax::Literal).is_err());
        let bad_weight = json.replace("\"weight\": \"5\"", "\"weight\": \"5/2\"");
        assert!(machine_from_json(&bad_weight, WeightSyntax::Literal).is_err());
    }
}

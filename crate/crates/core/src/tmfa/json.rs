use serde::{Deserialize, Serialize};

use super::{Actions, Instr, Label, Tmfa};
use crate::error::{Error, Result};
use crate::syntax::Alphabet;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonTmfa {
    states: usize,
    alphabet: Vec<char>,
    memories: usize,
    initial: usize,
    finals: Vec<usize>,
    trap: JsonTrap,
    transitions: Vec<JsonTransition>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonTrap {
    id: usize,
    accepting: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonTransition {
    from: usize,
    label: JsonLabel,
    to: usize,
    actions: Vec<Instr>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
enum JsonLabel {
    Char(char),
    Eps,
    Recall(usize),
}

/// Serializes `m`; memory indices are 0-based and the trap is not listed
/// among the finals.
pub fn to_json(m: &Tmfa) -> String {
    let doc = JsonTmfa {
        states: m.num_states(),
        alphabet: m.alphabet().chars().to_vec(),
        memories: m.memories(),
        initial: m.initial(),
        finals: m.finals().collect(),
        trap: JsonTrap {
            id: m.trap(),
            accepting: m.trap_accepting(),
        },
        transitions: m
            .all_transitions()
            .map(|(from, t)| JsonTransition {
                from,
                label: match t.label {
                    Label::Char(c) => JsonLabel::Char(c),
                    Label::Eps => JsonLabel::Eps,
                    Label::Recall(i) => JsonLabel::Recall(i),
                },
                to: t.to,
                actions: t.actions.as_slice().to_vec(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("automaton serialization cannot fail")
}

/// Parses and validates an automaton.
pub fn from_json(text: &str) -> Result<Tmfa> {
    let doc: JsonTmfa =
        serde_json::from_str(text).map_err(|e| Error::InvalidAutomaton(e.to_string()))?;
    let invalid = |msg: String| Err(Error::InvalidAutomaton(msg));
    if doc.states == 0 {
        return invalid("an automaton needs at least its trap state".into());
    }
    for (what, id) in [("initial", doc.initial), ("trap", doc.trap.id)] {
        if id >= doc.states {
            return invalid(format!("{what} state {id} out of range"));
        }
    }
    let mut m = Tmfa::new(Alphabet::new(doc.alphabet), doc.memories, doc.states);
    m.set_initial(doc.initial);
    m.set_trap(doc.trap.id, doc.trap.accepting);
    for q in doc.finals {
        if q >= doc.states {
            return invalid(format!("final state {q} out of range"));
        }
        if q == doc.trap.id {
            return invalid("the trap is listed among the finals".into());
        }
        m.set_final(q, true);
    }
    for t in doc.transitions {
        let label = match t.label {
            JsonLabel::Char(c) => Label::Char(c),
            JsonLabel::Eps => Label::Eps,
            JsonLabel::Recall(i) => Label::Recall(i),
        };
        m.add_transition(t.from, label, t.to, Actions::new(t.actions))?;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;
    use crate::tmfa::compile_naive;

    #[test]
    fn round_trip() {
        let m = compile_naive(&parse("{x:(a|b)+}d&x").unwrap(), &Alphabet::default());
        let back = from_json(&to_json(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn label_encoding() {
        let mut m = Tmfa::new(Alphabet::new("a".chars()), 1, 3);
        m.add_transition(0, Label::Eps, 1, Actions::single(1, 0, Instr::Open))
            .unwrap();
        m.add_transition(1, Label::Recall(0), 0, Actions::single(1, 0, Instr::Close))
            .unwrap();
        m.add_transition(1, Label::Char('a'), 1, Actions::keep(1))
            .unwrap();
        m.set_final(1, true);
        let v: serde_json::Value = serde_json::from_str(&to_json(&m)).unwrap();
        assert_eq!(v["finals"], serde_json::json!([1]));
        assert_eq!(v["trap"], serde_json::json!({"id": 2, "accepting": false}));
        let labels: Vec<_> = v["transitions"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["label"].clone())
            .collect();
        assert_eq!(
            labels,
            [
                serde_json::json!({"kind": "eps"}),
                serde_json::json!({"kind": "recall", "value": 0}),
                serde_json::json!({"kind": "char", "value": "a"}),
            ]
        );
        assert_eq!(v["transitions"][0]["actions"], serde_json::json!(["o"]));
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(from_json("{}").is_err());
        let bad_recall = r#"{"states":2,"alphabet":["a"],"memories":1,"initial":0,"finals":[],
            "trap":{"id":1,"accepting":false},
            "transitions":[{"from":0,"label":{"kind":"recall","value":0},"to":0,"actions":["d"]}]}"#;
        assert!(matches!(
            from_json(bad_recall),
            Err(Error::InvalidAutomaton(_))
        ));
        let from_trap = r#"{"states":2,"alphabet":["a"],"memories":0,"initial":0,"finals":[],
            "trap":{"id":1,"accepting":false},
            "transitions":[{"from":1,"label":{"kind":"char","value":"a"},"to":0,"actions":[]}]}"#;
        assert!(from_json(from_trap).is_err());
    }
}

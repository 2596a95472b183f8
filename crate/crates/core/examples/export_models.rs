//! Writes the reference model files shipped under `models/`.
//!
//! Usage: `cargo run -p ttg-core --example export_models -- <dir>`

use std::path::PathBuf;

use ttg_core::io::{load_str, save, OperatorDef, PresentationDocument};
use ttg_core::presentation::{chain_model, restriction_model, support_model};

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn table(rows: &[(&str, &[&str])]) -> OperatorDef {
    OperatorDef::Table {
        table: rows
            .iter()
            .map(|(k, v)| (k.to_string(), names(v)))
            .collect(),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir: PathBuf = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "models".into())
        .into();
    std::fs::create_dir_all(&dir)?;

    let mut support2 = PresentationDocument::from_presentation(&support_model(2)?);
    let full2: &[&str] = &["z", "a", "b", "t"];
    support2.operators.extend([
        ("radical".to_string(), OperatorDef::Radical {}),
        (
            "invert-unit".to_string(),
            OperatorDef::Division { s: names(&["t"]) },
        ),
        (
            "invert-a".to_string(),
            OperatorDef::Division {
                s: names(&["a", "t"]),
            },
        ),
        (
            "extremes".to_string(),
            OperatorDef::Family {
                members: vec![names(&["z"]), names(full2)],
            },
        ),
        (
            "a-chain".to_string(),
            OperatorDef::Family {
                members: vec![names(&["z"]), names(&["z", "a"]), names(full2)],
            },
        ),
        (
            "constant-full".to_string(),
            table(&[("z", full2), ("a", full2), ("b", full2), ("t", full2)]),
        ),
    ]);

    let mut chain3 = PresentationDocument::from_presentation(&chain_model(3)?);
    let full3: &[&str] = &["z", "p", "q", "r"];
    chain3.operators.extend([
        (
            "promote".to_string(),
            table(&[
                ("z", &["z"]),
                ("p", &["z", "p", "q"]),
                ("q", full3),
                ("r", full3),
            ]),
        ),
        (
            "promote-closure".to_string(),
            OperatorDef::CInfinity {
                inner: "promote".into(),
            },
        ),
        ("radical".to_string(), OperatorDef::Radical {}),
        (
            "invert-q".to_string(),
            OperatorDef::Division {
                s: names(&["q", "r"]),
            },
        ),
        (
            "skip-p".to_string(),
            OperatorDef::Family {
                members: vec![names(&["z"]), names(&["z", "p", "q"]), names(full3)],
            },
        ),
    ]);

    let mut restriction = PresentationDocument::from_presentation(&restriction_model(3, 2)?);
    let fullr: &[&str] = &["z", "a", "b", "t"];
    restriction.operators.extend([
        (
            "extremes".to_string(),
            OperatorDef::Family {
                members: vec![names(&["z"]), names(fullr)],
            },
        ),
        (
            "absorb-b".to_string(),
            table(&[
                ("z", &["z"]),
                ("a", &["z", "a"]),
                ("b", fullr),
                ("t", fullr),
            ]),
        ),
    ]);

    for (file, doc) in [
        ("support2.json", support2),
        ("chain3.json", chain3),
        ("restriction.json", restriction),
    ] {
        // Loading checks every operator definition before anything is written.
        let model = load_str(&doc.to_json(), 16)?;
        std::fs::write(dir.join(file), save(&model))?;
        println!("wrote {}", dir.join(file).display());
    }
    Ok(())
}

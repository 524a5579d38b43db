use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use torelli_core::johnson::{BPConfiguration, StandardBoundingPair};

use crate::CliError;

/// On-disk form of a bounding-pair configuration.
///
/// ```json
/// {"genus": 3, "pairs": [{"support": [1], "class_index": 3}]}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub genus: usize,
    pub pairs: Vec<PairDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    pub support: Vec<usize>,
    pub class_index: usize,
}

impl ConfigDocument {
    /// Parse JSON text; errors carry the line and column of the fault.
    pub fn parse(text: &str) -> Result<ConfigDocument, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Parse(format!("malformed configuration document: {e}")))
    }

    pub fn read(path: &Path) -> Result<ConfigDocument, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        ConfigDocument::parse(&text)
    }

    /// Validate into a configuration, naming the violated invariant on failure.
    pub fn to_configuration(&self) -> Result<BPConfiguration, CliError> {
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for (k, p) in self.pairs.iter().enumerate() {
            let support: BTreeSet<usize> = p.support.iter().copied().collect();
            if support.len() != p.support.len() {
                return Err(CliError::Domain(format!(
                    "invalid configuration: invariant `distinct support indices` violated by pair {}",
                    k + 1
                )));
            }
            pairs.push(StandardBoundingPair::new(support, p.class_index));
        }
        Ok(BPConfiguration::new(self.genus, pairs)?)
    }

    pub fn from_configuration(config: &BPConfiguration) -> ConfigDocument {
        ConfigDocument {
            genus: config.genus(),
            pairs: config
                .pairs()
                .iter()
                .map(|p| PairDocument {
                    support: p.support().iter().copied().collect(),
                    class_index: p.class_index(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use torelli_core::johnson::sigma;

    #[test]
    fn round_trip() {
        let c = sigma(3).unwrap().config().clone();
        let doc = ConfigDocument::from_configuration(&c);
        let back = ConfigDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(back.to_configuration().unwrap(), c);
    }

    #[test]
    fn positional_parse_errors() {
        let e = ConfigDocument::parse(
            "{\"genus\": 3,\n \"pairs\": [{\"support\": [1,], \"class_index\": 3}]}",
        )
        .unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("line 2"), "{e}");
        let e = ConfigDocument::parse(r#"{"genus": 3, "pairs": [], "extra": 1}"#).unwrap_err();
        assert!(e.to_string().contains("extra"), "{e}");
    }

    #[test]
    fn invariant_violations_are_domain_errors() {
        let doc =
            ConfigDocument::parse(r#"{"genus": 3, "pairs": [{"support": [1], "class_index": 1}]}"#)
                .unwrap();
        let e = doc.to_configuration().unwrap_err();
        assert_eq!(e.exit_code(), 4);
        assert!(e.to_string().contains("class outside support"), "{e}");
        let doc = ConfigDocument::parse(
            r#"{"genus": 3, "pairs": [{"support": [1, 1], "class_index": 2}]}"#,
        )
        .unwrap();
        assert!(doc
            .to_configuration()
            .unwrap_err()
            .to_string()
            .contains("distinct support"));
    }
}

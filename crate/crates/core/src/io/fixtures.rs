//! Reference data shipped with the crate, parsed on demand.

use crate::frieze::{CoxeterArray, CrossSection, FriezePattern};
use crate::separation::WsCollection;

use super::documents::{ClusterDocument, CoxeterArrayDocument, CrossSectionDocument, FriezeDocument};

pub const ARRAY_SQUARE: &str = include_str!("../../fixtures/array_square.json");
pub const ARRAY_PENTAGON: &str = include_str!("../../fixtures/array_pentagon.json");
pub const ARRAY_HEXAGON_ALTERNATING: &str = include_str!("../../fixtures/array_hexagon_alternating.json");
pub const ARRAY_HEXAGON_FAN: &str = include_str!("../../fixtures/array_hexagon_fan.json");
pub const HEXAGON_CLUSTER: &str = include_str!("../../fixtures/hexagon_cluster.json");
pub const HEXAGON_ALL_ONES: &str = include_str!("../../fixtures/hexagon_all_ones.json");
pub const NONAGON_SECTION: &str = include_str!("../../fixtures/nonagon_section.json");
pub const NONAGON_FRIEZE: &str = include_str!("../../fixtures/nonagon_frieze.json");

fn parse<T: serde::de::DeserializeOwned>(text: &str) -> T {
    serde_json::from_str(text).expect("bundled fixture parses")
}

/// The four classical arrays, by name.
pub fn coxeter_arrays() -> Vec<(&'static str, CoxeterArray)> {
    [
        ("square", ARRAY_SQUARE),
        ("pentagon", ARRAY_PENTAGON),
        ("hexagon-alternating", ARRAY_HEXAGON_ALTERNATING),
        ("hexagon-fan", ARRAY_HEXAGON_FAN),
    ]
    .into_iter()
    .map(|(name, text)| (name, parse::<CoxeterArrayDocument>(text).to_array().expect("valid array")))
    .collect()
}

pub fn hexagon_cluster() -> WsCollection {
    parse::<ClusterDocument>(HEXAGON_CLUSTER).to_collection().expect("valid cluster")
}

/// The geometric (3,6) frieze of [`hexagon_cluster`] from its Laurent
/// expansions at all-ones.
pub fn hexagon_all_ones() -> FriezePattern {
    parse::<FriezeDocument>(HEXAGON_ALL_ONES).to_pattern().expect("valid frieze")
}

pub fn nonagon_section() -> CrossSection {
    parse::<CrossSectionDocument>(NONAGON_SECTION).to_section().expect("valid section")
}

/// The full (3,9) frieze with [`nonagon_section`] as its section at 9.
pub fn nonagon_frieze() -> FriezePattern {
    parse::<FriezeDocument>(NONAGON_FRIEZE).to_pattern().expect("valid frieze")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{extend_cross_section, frieze_from_cluster};
    use crate::frieze::{cross_section, validate_frieze};

    #[test]
    fn fixtures_are_consistent() {
        assert_eq!(coxeter_arrays().len(), 4);
        assert_eq!(frieze_from_cluster(&hexagon_cluster()).unwrap(), hexagon_all_ones());
        let nine = nonagon_frieze();
        assert_eq!(extend_cross_section(&nonagon_section()).unwrap(), nine);
        assert_eq!(cross_section(&nine, 9).unwrap(), nonagon_section());
        assert!(validate_frieze(&nine).is_valid());
    }
}

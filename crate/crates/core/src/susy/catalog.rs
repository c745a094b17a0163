use crate::airy;
use crate::expr::Constants;

use super::{Superpotential, SusyError};

pub const CATALOG_SIZE: usize = 5;

/// `(name, W source)`; `lambda0` is bound to the linear-potential ground energy.
const ENTRIES: [(&str, &str); CATALOG_SIZE] = [
    ("volcano", "(5^0.5/2 - 1/4)*ln(1 + z^2)"),
    ("plugged-volcano", "ln(1 - x^2/2 + x^4)/4"),
    ("double-well", "-z^2/2 + z^4/4"),
    ("susy-sho", "z^2/2"),
    ("linear-airy", "-ln(airy_ai(abs(z) - lambda0))"),
];

pub fn catalog_names() -> [&'static str; CATALOG_SIZE] {
    ENTRIES.map(|(name, _)| name)
}

/// Source text of a catalog entry's `W`.
pub fn catalog_source(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Named constants available to catalog and user expressions (`lambda0`).
pub fn catalog_constants() -> Constants {
    Constants::new().with("lambda0", airy::linear_ground_energy())
}

fn canonical(name: &str) -> &str {
    match name {
        "plug-volcano" => "plugged-volcano",
        "sho" => "susy-sho",
        other => other,
    }
}

/// The five built-in systems: volcano, plugged volcano, double well, shifted
/// harmonic oscillator and the shifted symmetric linear potential.
pub fn catalog() -> Vec<Superpotential> {
    let consts = catalog_constants();
    ENTRIES
        .iter()
        .map(|(name, src)| Superpotential::parse(*name, src, &consts).expect("catalog sources parse"))
        .collect()
}

/// Looks up a catalog system by name (`plug-volcano` is accepted as an alias).
pub fn catalog_entry(name: &str) -> Result<Superpotential, SusyError> {
    let name = canonical(name);
    let src = catalog_source(name).ok_or_else(|| SusyError::UnknownSystem(name.to_owned()))?;
    Superpotential::parse(name, src, &catalog_constants())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susy::{GrowthClass, Symmetry};

    #[test]
    fn five_even_entries() {
        let all = catalog();
        assert_eq!(all.len(), 5);
        assert!(all.iter().all(|s| s.symmetry() == Symmetry::Even));
        let names: Vec<_> = all.iter().map(|s| s.name()).collect();
        assert_eq!(names, ["volcano", "plugged-volcano", "double-well", "susy-sho", "linear-airy"]);
    }

    #[test]
    fn double_well_source() {
        assert_eq!(catalog_source("double-well"), Some("-z^2/2 + z^4/4"));
    }

    #[test]
    fn growth_of_entries() {
        let g: Vec<_> = catalog().iter().map(|s| s.growth()).collect();
        assert_eq!(
            g,
            [
                GrowthClass::Logarithmic,
                GrowthClass::Logarithmic,
                GrowthClass::SuperLinear,
                GrowthClass::SuperLinear,
                GrowthClass::SuperLinear,
            ]
        );
    }

    #[test]
    fn sho_potential_is_shifted_oscillator() {
        let sho = catalog_entry("susy-sho").unwrap();
        for z in [-2.0, 0.0, 1.3] {
            assert!((sho.potential(z).unwrap() - (z * z - 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn linear_airy_binds_ground_energy() {
        let sp = catalog_entry("linear-airy").unwrap();
        let lambda0 = airy::linear_spectrum(1).unwrap().ground();
        assert!(sp.w_expr().to_string().contains("lambda0"));
        // V = |z| - lambda0
        for z in [-3.0, -0.4, 0.0, 0.8, 5.0] {
            assert!((sp.potential(z).unwrap() - (z.abs() - lambda0)).abs() < 1e-10, "{z}");
        }
    }

    #[test]
    fn aliases_and_unknown_names() {
        assert_eq!(catalog_entry("plug-volcano").unwrap().name(), "plugged-volcano");
        assert!(matches!(catalog_entry("hydrogen"), Err(SusyError::UnknownSystem(_))));
    }
}

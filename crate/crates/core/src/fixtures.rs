//! Small gazetteers shipped with the crate for tests and demos.

use crate::gazetteer::{Gazetteer, LoadOptions};

/// Two regions, three provinces, four districts; includes the homonym
/// "San Juan" and the shared-prefix pair "Pampas" / "Pampas Verdes".
pub const FIXTURE_A_CSV: &str = include_str!("../fixtures/fixture_a.csv");

/// Names with diacritics, including "Huánuco" at every level.
pub const FIXTURE_HUANUCO_CSV: &str = include_str!("../fixtures/fixture_huanuco.csv");

pub fn fixture_a() -> Gazetteer {
    Gazetteer::from_csv_reader(FIXTURE_A_CSV.as_bytes(), &LoadOptions::default())
        .expect("fixture A is valid")
}

pub fn fixture_huanuco() -> Gazetteer {
    Gazetteer::from_csv_reader(FIXTURE_HUANUCO_CSV.as_bytes(), &LoadOptions::default())
        .expect("fixture is valid")
}

//! Bundled example models.

pub const DICE: &str = include_str!("../fixtures/dice.toml");
pub const CONSOLATION: &str = include_str!("../fixtures/consolation.toml");
pub const SURGERY: &str = include_str!("../fixtures/surgery.toml");
pub const MAXIMIN: &str = include_str!("../fixtures/maximin.toml");
pub const STANDARD: &str = include_str!("../fixtures/standard.toml");

/// `(name, document)` for every bundled model.
pub const ALL: [(&str, &str); 5] = [
    ("dice", DICE),
    ("consolation", CONSOLATION),
    ("surgery", SURGERY),
    ("maximin", MAXIMIN),
    ("standard", STANDARD),
];

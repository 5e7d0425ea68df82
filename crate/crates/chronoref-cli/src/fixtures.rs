//! Bundled example documents.

/// Name and source of every bundled fixture.
pub const FIXTURES: &[(&str, &str)] = &[
    ("morning", include_str!("../fixtures/morning.chrono")),
    ("light", include_str!("../fixtures/light.chrono")),
    ("mod5_k3", include_str!("../fixtures/mod5_k3.chrono")),
    (
        "broken_embodiment",
        include_str!("../fixtures/broken_embodiment.chrono"),
    ),
];

pub fn get(name: &str) -> Option<&'static str> {
    FIXTURES
        .iter()
        .find(|(fixture, _)| *fixture == name)
        .map(|(_, source)| *source)
}

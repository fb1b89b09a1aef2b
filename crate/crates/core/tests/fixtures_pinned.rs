//! Pins the embedded fixtures: any edit to their values changes the checksum
//! and fails here.

use std::fmt::Write as _;

use loadcast::fixtures::{load_fixture, Fixture, FIXTURE_NAMES};

/// FNV-1a over the canonical rendering below.
fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325_u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn canonical_rendering() -> String {
    let mut out = String::new();
    for name in FIXTURE_NAMES {
        let _ = writeln!(out, "[{name}]");
        match load_fixture(name).unwrap() {
            Fixture::Section2(example) => {
                for series in [&example.x1, &example.x2, &example.y] {
                    for v in series {
                        let _ = writeln!(out, "{v:?}");
                    }
                }
            }
            Fixture::Table1(table) => {
                for column in &table.columns {
                    for v in column {
                        let _ = writeln!(out, "{v:?}");
                    }
                }
            }
            Fixture::Table2(table) => {
                for (actual, predicted) in &table.pairs {
                    let _ = writeln!(out, "{actual:?} {predicted:?}");
                }
            }
            Fixture::Table3(input) => {
                for v in &input.features {
                    let _ = writeln!(out, "{v:?}");
                }
                let _ = writeln!(out, "{:?}", input.forecasted_load_mw);
            }
        }
    }
    out
}

#[test]
fn fixture_checksum_is_pinned() {
    let rendering = canonical_rendering();
    let checksum = fnv1a(rendering.as_bytes());
    assert_eq!(
        checksum, 0xb87f_eaf7_faf6_a6f3,
        "fixture contents changed; canonical rendering:\n{rendering}"
    );
}

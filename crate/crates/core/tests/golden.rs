mod common;

use fkf_core::ring::to_balanced;
use fkf_core::Ansatz;

#[test]
fn golden_coefficients_are_reproduced() {
    let goldens = common::goldens();
    assert_eq!(goldens.len(), 23);
    for ansatz in [Ansatz::P4, Ansatz::A5] {
        let e = common::engine(1);
        let st = e.run(ansatz, 1).unwrap();
        for g in goldens.iter().filter(|g| g.ansatz == ansatz) {
            let got = st.coefficient(g.component, g.index).unwrap_or_else(|| panic!("{} missing", g.label()));
            let got = to_balanced(got).unwrap();
            assert_eq!(got, g.value, "{}\n got  {}\n want {}", g.label(), got, g.value);
        }
    }
}

//! Builds one instance of each minimal family and audits it.
//!
//! Run with: cargo run --example build_families

use semitransitive::constructors::{
    bound, consecutive_partition, cyclic_group, gpd, type1, type2, type3, type4, type5,
    Type4Params,
};
use semitransitive::semigroup::Semigroup;
use semitransitive::semitrans::{audit_all, blocks};

fn show(label: &str, s: &Semigroup) {
    let b = blocks(s).expect("families are semitransitive");
    let audits = audit_all(s).expect("families are singular and closed");
    let all_ok = audits.iter().all(|r| r.ok());
    println!(
        "{label}: n={} size={} blocks={:?} audits={}",
        s.degree(),
        s.len(),
        b.sizes(),
        if all_ok { "all pass" } else { "FAILURE" }
    );
    for e in s.elements() {
        println!("    {e}");
    }
    println!();
}

fn main() {
    // n = 8: the greatest proper divisor is 4, so minimal size is 13
    let n = 8;
    println!(
        "degree {n}: greatest proper divisor {}, minimal size {}\n",
        gpd(n),
        bound(n)
    );

    let partition = consecutive_partition(n, 4);
    let group = cyclic_group(n, partition[0]).unwrap();
    show("family 1", &type1(n, 4, &group, &partition).unwrap());
    show("family 2 (inverse of 1)", &type2(n, 4, &group, &partition).unwrap());
    show("family 3 (alternating)", &type3(n, 4, &group, &partition).unwrap());

    // families 4 and 5 need n = l p (m - 1) + p; degree 9 with p = 3 works
    let params = Type4Params::canonical(3, 2, 2).unwrap();
    show("family 4", &type4(&params).unwrap());
    show("family 5 (inverse of 4)", &type5(&params).unwrap());
}

//! Chain-cycle notation and the basic algebra of partial permutations.
//!
//! Run with: cargo run --example chain_cycle

use semitransitive::pperm::PartialPerm;

fn main() {
    // a chain walks off the domain, a cycle stays inside it
    let a = PartialPerm::parse("(1,2](3]", 3).unwrap();
    let b = PartialPerm::parse("(1](2,3]", 3).unwrap();
    println!("a        = {a}");
    println!("b        = {b}");
    println!("a . b    = {}", a.compose(&b));
    println!("a^-1     = {}", a.inverse());
    println!();

    let cycle = PartialPerm::parse("(1,2,3)", 3).unwrap();
    println!("c        = {cycle}");
    println!("c . c    = {}", cycle.compose(&cycle));
    println!();

    // powers of a chain eat it up; the idempotent power lands on zero
    let chain = PartialPerm::parse("(1](2,3,4]", 4).unwrap();
    for k in 1..=3 {
        println!("{chain}^{k}   = {}", chain.power(k));
    }
    println!("idempotent power of {chain} = {}", chain.idempotent_power());
    println!();

    // mixed elements split into a permutation part and a nilpotent part
    let mixed = PartialPerm::parse("(1,2)(3,4](5]", 5).unwrap();
    println!("m        = {mixed}");
    println!("m^2      = {}", mixed.power(2));
    println!("idempotent power of m = {}", mixed.idempotent_power());
    println!("domain {} image {} rank {}", mixed.domain(), mixed.image(), mixed.rank());
    println!("arrows: {:?}", mixed.arrows());
    println!();

    // parsing accepts omitted points and rejects repeated ones
    let sparse = PartialPerm::parse("(3,5,7](4,6,8]", 8).unwrap();
    println!("parsed sparse form back out as: {sparse}");
    let err = PartialPerm::parse("(1,2](2,3]", 3).unwrap_err();
    println!("repeated point is rejected: {err}");
}

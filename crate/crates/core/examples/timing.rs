use confdesign_core::designs::{self, SystemFlavor};
use confdesign_core::mpoly::{MPoly, Var};
use confdesign_core::ratfunc::RatFunc;
use num_traits::One;

fn c() -> MPoly { MPoly::var(Var::C) }

fn printed() -> RatFunc {
    let num = MPoly::int(-15) * c()
        * (MPoly::int(5_734_920) * c().pow(5) + MPoly::int(59_136_716) * c().pow(4)
            + MPoly::int(283_246_086) * c().pow(3) + MPoly::int(2_858_841_411) * c().pow(2)
            + MPoly::int(7_908_127_017) * c() - MPoly::int(2_179_288_566));
    let den = MPoly::int(260_520) * c().pow(5) - MPoly::int(7_840_184) * c().pow(4)
        - MPoly::int(72_048_858) * c().pow(3) + MPoly::int(5_528_559_692) * c().pow(2)
        - MPoly::int(75_371_626_638) * c() + MPoly::int(17_347_413_996);
    RatFunc::new(num, den)
}

fn main() {
    let vs8 = designs::half_vectors_debug(8);
    for (name, v) in [("8a", &vs8[0]), ("8b", &vs8[1])] {
        let sys = designs::eight_half_with_debug(SystemFlavor::DegreeTwo, v);
        let sol = sys.solve().unwrap();
        let d = sol.iter().fold(RatFunc::one(), |acc, x| acc + x.clone());
        let diff = d.clone() - printed();
        println!("d(2,4,{}) == printed? {}", name, diff.is_zero());
    }
    let dd = designs::eight_half_with_debug(SystemFlavor::DegreeTwo, designs::half_eight_designated_debug());
    let sol = dd.solve().unwrap();
    let d = sol.iter().fold(RatFunc::one(), |acc, x| acc + x.clone());
    println!("d(designated) == printed? {}", (d - printed()).is_zero());
}

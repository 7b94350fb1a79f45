"""Write the example session scripts in sessions/ from the constructions in biratkit.families."""

import argparse
from pathlib import Path

from biratkit import families
from biratkit.polynomial import format_polynomial


def ring_line(name, ring):
    return f"ring {name} = [{', '.join(ring.names)}]"


def poly_list(polys, per_line=3):
    if any(len(f.terms) > 4 for f in polys):
        per_line = 1
    chunks = [", ".join(format_polynomial(f) for f in polys[i:i + per_line])
              for i in range(0, len(polys), per_line)]
    return ",\n    ".join(chunks)


def map_session(title, phi, commands, base=True):
    src, tgt = phi.source_ring, phi.target_ring
    lines = [f"# {title}", f"field {src.field.p}", ring_line("X", src), ring_line("Y", tgt)]
    src_q = tgt_q = ""
    if not phi.I.is_zero():
        lines.append(f"ideal I in X = {poly_list(phi.I.gens)}")
        src_q = " / I"
    if not phi.J.is_zero():
        lines.append(f"ideal J in Y = {poly_list(phi.J.gens)}")
        tgt_q = " / J"
    if base:
        lines.append(f"ideal B in X = {poly_list(phi.forms)}")
    lines.append(f"map f : X{src_q} -> Y{tgt_q} = [\n    {poly_list(phi.forms)}]")
    lines += [f"compute {c}" for c in commands]
    return "\n".join(lines) + "\n"


def example3_session():
    Y, X = families.example3()
    R = Y.ring
    return "\n".join([
        "# singular scheme of a quartic in P^11 (sum of squares of the 2x2 minors of a 6x2 matrix)",
        f"field {R.field.p}",
        ring_line("P11", R),
        f"ideal Y in P11 = {poly_list(Y.gens)}",
        f"ideal X in P11 = {poly_list(X.gens, 2)}",
        "compute segre X in Y",
        "compute segre X",
    ]) + "\n"


def build(out: Path):
    out.mkdir(parents=True, exist_ok=True)
    scripts = {
        "veronese.brt": map_session("Veronese embedding of the plane in P^5", families.veronese(),
                                    ["degrees f", "degree f", "dominant f", "kernel f 2", "image f"], base=False),
        "cubocubic.brt": map_session("cubo-cubic Cremona transformation of P^3", families.cubo_cubic(),
                                     ["degrees f", "birational f", "inverse f", "degrees f_inv", "segre B"]),
        "example2.brt": map_session("P^6 --> G(2,4) by the maximal minors of a 3x5 linear matrix",
                                    families.example2(),
                                    ["degrees f", "birational f", "inverse f", "degrees f_inv", "segre B"]),
        "example3.brt": example3_session(),
    }
    for p in (70001, 31):
        psi, _ = families.grassmannian_family(p)
        scripts[f"table1_{p}.brt"] = map_session(
            f"P^4 --> G(1,3) by the 2x2 minors of a 2x4 Hankel matrix, inverted over Z/{p}",
            psi, ["inverse f", "degrees f_inv"], base=False)
    for name, text in scripts.items():
        (out / name).write_text(text, encoding="utf-8")
        print(out / name)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "sessions")
    build(ap.parse_args().out)

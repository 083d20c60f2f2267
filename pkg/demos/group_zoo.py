"""Walk the built-in group catalog and print the facts the rest of the
package keys off: order, abelianness, automorphism count, and whether
the group admits a fixed-point-free automorphism (the one property that
decides if the tree criterion applies).
"""

from hopfgalois.groups import catalog_names, has_fpf_automorphism, load_group


def main():
    header = f"{'name':<6} {'order':>5} {'abelian':>8} {'|Aut|':>6} {'fpf aut':>8}"
    print(header)
    print("-" * len(header))
    for name in catalog_names():
        G = load_group(name)
        print(
            f"{name:<6} {G.order:>5} {str(G.is_abelian()):>8} "
            f"{len(G.automorphisms()):>6} {str(has_fpf_automorphism(G)):>8}"
        )
    print()
    print("Groups without a fixed-point-free automorphism are the ones")
    print("where fpf-ness of a pair is equivalent to its graph being a tree.")


if __name__ == "__main__":
    main()

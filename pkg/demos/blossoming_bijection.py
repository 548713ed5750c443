"""Open every forested version of the map M0 into a blossoming tree and
close it again; group the trees into stable classes.

Run with ``python demos/blossoming_bijection.py``.
"""

from tuttedelta.blossom import (flippable_edges, forest_gf_via_trees, roundtrip_ok, shape_word,
                                theta_close, theta_open)
from tuttedelta.combmap import m0, underlying_graph
from tuttedelta.graph import components, enumerate_spanning_forests
from tuttedelta.series.bruteforce import forest_polynomial


def main():
    m = m0()
    g = underlying_graph(m)
    anchor = m.root
    print("M0 faces:", m.faces(), " marked face contains half-edge", anchor)
    print(f"\n{'forest':<10}{'cc':>3}  {'word':<16}{'flippable':<11}closes back")
    for f in enumerate_spanning_forests(g):
        tree = theta_open(m, f, anchor)
        flips = sorted(str(e) for e in g.edges if flippable_edges(tree) >> e & 1)
        print(f"{','.join(map(str, sorted(e for e in g.edges if f >> e & 1))) or '-':<10}"
              f"{components(g, f):>3}  {tree.to_word():<16}{','.join(flips) or '-':<11}"
              f"{roundtrip_ok(m, f, anchor)}")

    classes = {}
    for f in enumerate_spanning_forests(g):
        classes.setdefault(shape_word(theta_open(m, f, anchor)), []).append(f)
    print(f"\n{len(classes)} stable classes (one per spanning tree):")
    for word, members in classes.items():
        print(f"  {word:<16} {len(members)} forest(s)")

    print("\nforest polynomial, direct:      ", forest_polynomial(m).as_expr())
    print("forest polynomial, via classes: ", forest_gf_via_trees(m, anchor).as_expr())

    closed = theta_close(theta_open(m, 1 << 0, anchor))
    kept = [e for e in g.edges if closed.forest >> e & 1]
    print("\nclosing i(BB)x(L)L gives back forest", kept, "and face", closed.marked_face)


if __name__ == "__main__":
    main()

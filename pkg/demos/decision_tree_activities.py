"""Walk through decision-tree activities on the four-edge graph G0.

Run with ``python demos/decision_tree_activities.py``.
"""

from tuttedelta import delta0, g0, random_decision_tree, tutte_subgraph_sum
from tuttedelta.classical import delta_ord, ordering_activity
from tuttedelta.delta import assign_types, interval_contribution, interval_partition
from tuttedelta.graph import enumerate_spanning_trees


def show_partition(g, delta, title):
    print(f"\n{title}")
    total = None
    for iv in interval_partition(g, delta):
        c = interval_contribution(g, iv)
        total = c if total is None else total + c
        print(f"  tree {''.join(g.names(iv.tree)):<4} [{''.join(g.names(iv.low)) or '-':<4},"
              f" {''.join(g.names(iv.high)):<4}]  size {iv.size}  contributes {c}")
    print(f"  sum of contributions: {total}")


def main():
    g = g0()
    print("T(G0) by the subgraph expansion:", tutte_subgraph_sum(g))

    d = delta0(g)
    print("\nTypes of every edge for each spanning tree under Delta0:")
    for t in enumerate_spanning_trees(g):
        typing = assign_types(g, d, t)
        types = " ".join(f"{g.label(e)}:{typing.types[e]}" for e in sorted(g.edges))
        print(f"  {''.join(g.names(t)):<3} {types}  active {{{','.join(g.names(typing.active))}}}")

    show_partition(g, d, "Interval partition from Delta0")
    show_partition(g, random_decision_tree(g, 1), "Interval partition from a random decision tree")

    order = [3, 1, 0, 2]
    print("\nOrdering activity for d < b < a < c agrees with its decision tree:")
    for t in enumerate_spanning_trees(g):
        a = ordering_activity(g, order, t)
        b = assign_types(g, delta_ord(g, order), t).active
        print(f"  {''.join(g.names(t)):<3} {','.join(g.names(a)):<6} {'ok' if a == b else 'MISMATCH'}")


if __name__ == "__main__":
    main()

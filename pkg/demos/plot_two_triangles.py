"""
Three distances on two joined triangles
=======================================

Six vertices form two triangles joined by the edge 2-3.  Vertex 2
shares one neighbour with vertex 0 and none with vertex 3, and every
measure below ranks the pair (2, 0) as closer than (2, 3).
"""

from clusterdist import burt, figure_one_graph, jaccard, otsuka_ochiai

g = figure_one_graph()
print("edges:", g.edges().tolist())

# open neighbourhoods, the vertex itself is not included
for v in range(g.vertex_count):
    print(v, g.neighbors(v).tolist())

for name, f in [("jaccard", jaccard), ("otoc", otsuka_ochiai), ("burt", burt)]:
    print(f"{name:8s} d(2,0) = {f(g, 2, 0):.4f}   d(2,3) = {f(g, 2, 3):.4f}")

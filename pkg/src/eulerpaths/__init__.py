"""Path decompositions and long paths in Eulerian digraphs."""

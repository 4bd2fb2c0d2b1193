from typing import Dict, FrozenSet, Iterable, List, Set, Tuple

import networkx as nx


class SubsortClosure:
    """
    Reflexive-transitive closure of the declared subsort edges
    """

    def __init__(self, sorts: Iterable[str], edges: Iterable[Tuple[str, str]]):
        graph = nx.DiGraph()
        graph.add_nodes_from(sorts)
        graph.add_edges_from(edges)
        self._sorts = frozenset(graph.nodes)
        self._reach: Dict[str, FrozenSet[str]] = {
            sort: frozenset(nx.descendants(graph, sort)) | {sort} for sort in graph.nodes
        }

    @property
    def sorts(self) -> FrozenSet[str]:
        """
        Sorts getter
        """
        return self._sorts

    @property
    def reach(self) -> Dict[str, FrozenSet[str]]:
        """
        Supersorts of every sort, itself included
        """
        return self._reach

    def holds(self, sub: str, sup: str) -> bool:
        return sup in self._reach.get(sub, ())

    def __call__(self, sub: str, sup: str) -> bool:
        return self.holds(sub, sup)

    def supersorts(self, sort: str) -> FrozenSet[str]:
        return self._reach.get(sort, frozenset())

    def subsorts(self, sort: str) -> Set[str]:
        return {other for other, ups in self._reach.items() if sort in ups}

    def pairs(self, among: Iterable[str] = None) -> List[Tuple[str, str]]:
        """
        Every (sub, sup) pair in the relation, optionally restricted to some sorts
        """
        keep = self._sorts if among is None else frozenset(among)
        return sorted(
            (sub, sup) for sub, ups in self._reach.items() if sub in keep for sup in ups if sup in keep
        )

    def __eq__(self, obj: object) -> bool:
        if isinstance(obj, SubsortClosure):
            return self._reach == obj._reach
        return False

    def __hash__(self) -> int:
        return hash(frozenset(self._reach.items()))

    def __repr__(self) -> str:
        return f"SubsortClosure({len(self._sorts)} sorts)"

"""Independent brute-force oracles the implementation is checked against.

These never touch the suffix tree or the merge code: phrase discovery
is plain n-gram enumeration, component discovery is BFS over an
explicitly materialized graph.
"""

from collections import defaultdict


def phrase_nodes_oracle(docs, min_docs=2, max_phrase_len=6):
    """Enumerate within-sentence n-grams and keep the branching ones.

    A phrase qualifies as a tree-internal node exactly when its
    occurrences continue in at least two distinct ways, counting a
    unique end-of-sentence marker per sentence. Returns
    {phrase_tuple: frozenset(petition_ids)} after the min_docs /
    max_phrase_len / stopword-only filters.
    """
    stopword_stems = set()
    occurrences = defaultdict(set)  # phrase -> doc id set
    continuations = defaultdict(set)  # phrase -> next-symbol set

    for d, doc in enumerate(docs):
        for s, sentence in enumerate(doc.sentences):
            stems = [t.stem for t in sentence]
            for t in sentence:
                if t.is_stopword:
                    stopword_stems.add(t.stem)
            n = len(stems)
            for i in range(n):
                for j in range(i + 1, n + 1):
                    phrase = tuple(stems[i:j])
                    occurrences[phrase].add(doc.petition_id)
                    nxt = stems[j] if j < n else ("$end", d, s)
                    continuations[phrase].add(nxt)

    result = {}
    for phrase, doc_ids in occurrences.items():
        if len(continuations[phrase]) < 2:
            continue
        if len(doc_ids) < min_docs or len(phrase) > max_phrase_len:
            continue
        if all(stem in stopword_stems for stem in phrase):
            continue
        result[phrase] = frozenset(doc_ids)
    return result


def merge_components_oracle(doc_sets, threshold):
    """Connected components over the mutual-overlap predicate, via BFS.

    doc_sets: list of frozensets. Returns a set of frozensets of input
    indices.
    """
    n = len(doc_sets)
    adjacency = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            inter = len(doc_sets[i] & doc_sets[j])
            if inter > threshold * len(doc_sets[i]) and inter > threshold * len(doc_sets[j]):
                adjacency[i].append(j)
                adjacency[j].append(i)

    seen = [False] * n
    components = set()
    for start in range(n):
        if seen[start]:
            continue
        queue = [start]
        seen[start] = True
        group = []
        while queue:
            node = queue.pop()
            group.append(node)
            for neighbor in adjacency[node]:
                if not seen[neighbor]:
                    seen[neighbor] = True
                    queue.append(neighbor)
        components.add(frozenset(group))
    return components

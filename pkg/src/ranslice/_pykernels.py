"""Pure-Python kernels. Same signatures and results as ``_ckernels``.

Argument blocks (all integer sequences):

* problem ``P``: sub_ptr, sub_adj, sub_lnk, vnf_demand, vnf_cum, vnf_ptr,
  vnf_adj, vnf_bw
* state ``S``: node_res, link_res, host (host -1 means unplaced); mutated

Tie-breaks: equal keys go to the lower node id / lower VNF index.
"""
from __future__ import annotations

from bisect import bisect_left

SIZE_KEY = 0
CUMULATIVE_KEY = 1


def find_link(s, t, sub_ptr, sub_adj, sub_lnk):
    lo, hi = sub_ptr[s], sub_ptr[s + 1]
    i = bisect_left(sub_adj, t, lo, hi)
    if i < hi and sub_adj[i] == t:
        return sub_lnk[i]
    return -1


def placed_neighbours(u, vnf_ptr, vnf_adj, vnf_bw, host):
    """Map host -> total bandwidth u would need toward that host."""
    need = {}
    for e in range(vnf_ptr[u], vnf_ptr[u + 1]):
        h = host[vnf_adj[e]]
        if h >= 0:
            need[h] = need.get(h, 0) + vnf_bw[e]
    return need


def candidate_nodes(need, sub_ptr, sub_adj, sub_lnk):
    """Hosts of placed neighbours plus the substrate nodes adjacent to all of them."""
    hosts = sorted(need)
    first = hosts[0]
    out = list(hosts)
    for k in range(sub_ptr[first], sub_ptr[first + 1]):
        c = sub_adj[k]
        if all(find_link(c, h, sub_ptr, sub_adj, sub_lnk) >= 0 for h in hosts[1:]):
            out.append(c)
    return out


def fits(t, need, link_res, sub_ptr, sub_adj, sub_lnk):
    for h, bw in need.items():
        if h == t:
            continue
        l = find_link(t, h, sub_ptr, sub_adj, sub_lnk)
        if l < 0 or link_res[l] < bw:
            return False
    return True


def commit(u, t, need, demand, node_res, link_res, host, sub_ptr, sub_adj, sub_lnk):
    node_res[t] -= demand
    host[u] = t
    for h, bw in need.items():
        if h != t:
            link_res[find_link(t, h, sub_ptr, sub_adj, sub_lnk)] -= bw


def uncommit(u, t, need, demand, node_res, link_res, host, sub_ptr, sub_adj, sub_lnk):
    node_res[t] += demand
    host[u] = -1
    for h, bw in need.items():
        if h != t:
            link_res[find_link(t, h, sub_ptr, sub_adj, sub_lnk)] += bw


def cumulative_node(s, sub_ptr, sub_adj, node_res):
    total = node_res[s]
    for k in range(sub_ptr[s], sub_ptr[s + 1]):
        total += node_res[sub_adj[k]]
    return total


def select_by_difference(cands, target, most_negative, sub_ptr, sub_adj, node_res):
    """Pick the smallest non-negative ``s(T) - target``; if every difference
    is negative, the one closest to zero (or the most negative, if asked).
    ``cands`` must be ascending so that ties keep the lower id."""
    best, best_diff = -1, 0
    for t in cands:
        diff = cumulative_node(t, sub_ptr, sub_adj, node_res) - target
        if best < 0:
            take = True
        elif diff >= 0:
            take = best_diff < 0 or diff < best_diff
        elif best_diff >= 0:
            take = False
        else:
            take = diff < best_diff if most_negative else diff > best_diff
        if take:
            best, best_diff = t, diff
    return best


def embed_vnf(u, sub_ptr, sub_adj, sub_lnk, vnf_demand, vnf_cum, vnf_ptr, vnf_adj, vnf_bw,
              node_res, link_res, host):
    d = vnf_demand[u]
    need = placed_neighbours(u, vnf_ptr, vnf_adj, vnf_bw, host)
    if not need:
        t, best = -1, -1
        for s in range(len(node_res)):
            if node_res[s] > best:
                t, best = s, node_res[s]
        if t < 0 or best < d:
            return -1
        commit(u, t, need, d, node_res, link_res, host, sub_ptr, sub_adj, sub_lnk)
        return t
    cands = candidate_nodes(need, sub_ptr, sub_adj, sub_lnk)
    cands.sort(key=lambda s: (-node_res[s], s))
    for t in cands:
        if node_res[t] >= d and fits(t, need, link_res, sub_ptr, sub_adj, sub_lnk):
            commit(u, t, need, d, node_res, link_res, host, sub_ptr, sub_adj, sub_lnk)
            return t
    return -1


def embed_group(u, most_negative, sub_ptr, sub_adj, sub_lnk, vnf_demand, vnf_cum, vnf_ptr,
                vnf_adj, vnf_bw, node_res, link_res, host):
    d = vnf_demand[u]
    need = placed_neighbours(u, vnf_ptr, vnf_adj, vnf_bw, host)
    if not need:
        cands = [s for s in range(len(node_res)) if node_res[s] >= d]
    else:
        cands = sorted(
            t for t in candidate_nodes(need, sub_ptr, sub_adj, sub_lnk)
            if node_res[t] >= d and fits(t, need, link_res, sub_ptr, sub_adj, sub_lnk))
    t = select_by_difference(cands, vnf_cum[u], most_negative, sub_ptr, sub_adj, node_res)
    if t >= 0:
        commit(u, t, need, d, node_res, link_res, host, sub_ptr, sub_adj, sub_lnk)
    return t


def run_vnf_order(order, sub_ptr, sub_adj, sub_lnk, vnf_demand, vnf_cum, vnf_ptr, vnf_adj,
                  vnf_bw, node_res, link_res, host):
    count = 0
    for u in order:
        if embed_vnf(u, sub_ptr, sub_adj, sub_lnk, vnf_demand, vnf_cum, vnf_ptr, vnf_adj,
                     vnf_bw, node_res, link_res, host) >= 0:
            count += 1
    return count


def run_group_order(visit, most_negative, sub_ptr, sub_adj, sub_lnk, vnf_demand, vnf_cum,
                    vnf_ptr, vnf_adj, vnf_bw, node_res, link_res, host):
    count = 0
    for u in visit:
        if embed_group(u, most_negative, sub_ptr, sub_adj, sub_lnk, vnf_demand, vnf_cum,
                       vnf_ptr, vnf_adj, vnf_bw, node_res, link_res, host) >= 0:
            count += 1
    return count


def build_clusters(mode, vnf_ptr, vnf_adj, vnf_cum, visit, cluster_ptr, keys):
    """Greedy disjoint clusters: take the best pooled VNF as head, add its
    pooled neighbours, drop them all from the pool, repeat.

    Fills ``visit`` (head first, then members ascending), ``cluster_ptr``
    and ``keys``; returns the number of clusters.
    """
    n = len(vnf_ptr) - 1
    pooled = [True] * n
    udeg = [vnf_ptr[v + 1] - vnf_ptr[v] for v in range(n)]
    remaining, pos, c = n, 0, 0
    cluster_ptr[0] = 0
    while remaining:
        head, best = -1, 0
        for v in range(n):
            if pooled[v]:
                key = udeg[v] if mode == SIZE_KEY else vnf_cum[v]
                if head < 0 or key > best:
                    head, best = v, key
        members = [head]
        members.extend(w for w in vnf_adj[vnf_ptr[head]:vnf_ptr[head + 1]] if pooled[w])
        for x in members:
            pooled[x] = False
        for x in members:
            for w in vnf_adj[vnf_ptr[x]:vnf_ptr[x + 1]]:
                udeg[w] -= 1
        for x in members:
            visit[pos] = x
            pos += 1
        remaining -= len(members)
        keys[c] = best
        c += 1
        cluster_ptr[c] = pos
    return c


def exact_search(max_expansions, sub_ptr, sub_adj, sub_lnk, vnf_demand, vnf_cum, vnf_ptr,
                 vnf_adj, vnf_bw, node_res, link_res, host, best_host):
    """Depth-first branch and bound over VNFs in index order.

    Each VNF branches over every node that can take it (ascending id), then
    over leaving it out. A branch is cut once even placing every remaining
    VNF could not beat the incumbent. Returns ``(best, expansions, done)``;
    ``done`` is False when ``max_expansions`` stopped the search early.
    """
    n_v, n_s = len(vnf_demand), len(node_res)
    best = -1
    expansions = 0
    aborted = False

    def dfs(i, count):
        nonlocal best, expansions, aborted
        expansions += 1
        if expansions > max_expansions:
            aborted = True
            return
        if count > best:
            best = count
            for g in range(n_v):
                best_host[g] = host[g]
        if i == n_v or count + (n_v - i) <= best:
            return
        d = vnf_demand[i]
        need = placed_neighbours(i, vnf_ptr, vnf_adj, vnf_bw, host)
        for t in range(n_s):
            if node_res[t] >= d and fits(t, need, link_res, sub_ptr, sub_adj, sub_lnk):
                commit(i, t, need, d, node_res, link_res, host, sub_ptr, sub_adj, sub_lnk)
                dfs(i + 1, count + 1)
                uncommit(i, t, need, d, node_res, link_res, host, sub_ptr, sub_adj, sub_lnk)
                if aborted or count + (n_v - i) <= best:
                    return
        dfs(i + 1, count)

    dfs(0, 0)
    return best, min(expansions, max_expansions), not aborted

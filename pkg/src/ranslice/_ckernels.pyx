# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; behaviour matches ``_pykernels`` exactly."""
from libc.stdlib cimport malloc, free

ctypedef long long i64
ctypedef const i64[::1] ro
ctypedef i64[::1] rw

cdef enum:
    SIZE_KEY = 0


cdef inline i64 find_link(i64 s, i64 t, ro sub_ptr, ro sub_adj, ro sub_lnk) noexcept nogil:
    cdef i64 lo = sub_ptr[s], hi = sub_ptr[s + 1], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if sub_adj[mid] < t:
            lo = mid + 1
        else:
            hi = mid
    if lo < sub_ptr[s + 1] and sub_adj[lo] == t:
        return sub_lnk[lo]
    return -1


cdef struct Need:
    i64 n
    i64 *host
    i64 *bw


cdef int need_alloc(Need *nd, i64 cap) noexcept nogil:
    if cap < 1:
        cap = 1
    nd.n = 0
    nd.host = <i64 *> malloc(cap * sizeof(i64))
    nd.bw = <i64 *> malloc(cap * sizeof(i64))
    return 0 if nd.host != NULL and nd.bw != NULL else -1


cdef void need_free(Need *nd) noexcept nogil:
    free(nd.host)
    free(nd.bw)


cdef void placed_neighbours(i64 u, ro vnf_ptr, ro vnf_adj, ro vnf_bw, rw host, Need *nd) noexcept nogil:
    """Distinct hosts of placed neighbours, ascending, with summed bandwidth."""
    cdef i64 e, h, j, k
    nd.n = 0
    for e in range(vnf_ptr[u], vnf_ptr[u + 1]):
        h = host[vnf_adj[e]]
        if h < 0:
            continue
        j = 0
        while j < nd.n and nd.host[j] < h:
            j += 1
        if j < nd.n and nd.host[j] == h:
            nd.bw[j] += vnf_bw[e]
        else:
            k = nd.n
            while k > j:
                nd.host[k] = nd.host[k - 1]
                nd.bw[k] = nd.bw[k - 1]
                k -= 1
            nd.host[j] = h
            nd.bw[j] = vnf_bw[e]
            nd.n += 1


cdef i64 candidate_nodes(Need *nd, ro sub_ptr, ro sub_adj, ro sub_lnk, i64 *out) noexcept nogil:
    cdef i64 m = 0, j, k, c, first = nd.host[0]
    cdef bint ok
    for j in range(nd.n):
        out[m] = nd.host[j]
        m += 1
    for k in range(sub_ptr[first], sub_ptr[first + 1]):
        c = sub_adj[k]
        ok = True
        for j in range(1, nd.n):
            if find_link(c, nd.host[j], sub_ptr, sub_adj, sub_lnk) < 0:
                ok = False
                break
        if ok:
            out[m] = c
            m += 1
    return m


cdef bint fits(i64 t, Need *nd, rw link_res, ro sub_ptr, ro sub_adj, ro sub_lnk) noexcept nogil:
    cdef i64 j, l
    for j in range(nd.n):
        if nd.host[j] == t:
            continue
        l = find_link(t, nd.host[j], sub_ptr, sub_adj, sub_lnk)
        if l < 0 or link_res[l] < nd.bw[j]:
            return False
    return True


cdef void commit(i64 u, i64 t, Need *nd, i64 d, i64 sign, rw node_res, rw link_res, rw host,
                 ro sub_ptr, ro sub_adj, ro sub_lnk) noexcept nogil:
    # sign +1 places u on t, -1 undoes it
    cdef i64 j
    node_res[t] -= sign * d
    host[u] = t if sign > 0 else -1
    for j in range(nd.n):
        if nd.host[j] != t:
            link_res[find_link(t, nd.host[j], sub_ptr, sub_adj, sub_lnk)] -= sign * nd.bw[j]


cdef inline i64 cumulative_node(i64 s, ro sub_ptr, ro sub_adj, rw node_res) noexcept nogil:
    cdef i64 total = node_res[s], k
    for k in range(sub_ptr[s], sub_ptr[s + 1]):
        total += node_res[sub_adj[k]]
    return total


cdef i64 select_c(i64 *cands, i64 m, i64 target, bint most_negative, ro sub_ptr, ro sub_adj,
                  rw node_res) noexcept nogil:
    cdef i64 best = -1, best_diff = 0, diff, j, t
    cdef bint take
    for j in range(m):
        t = cands[j]
        diff = cumulative_node(t, sub_ptr, sub_adj, node_res) - target
        if best < 0:
            take = True
        elif diff >= 0:
            take = best_diff < 0 or diff < best_diff
        elif best_diff >= 0:
            take = False
        elif most_negative:
            take = diff < best_diff
        else:
            take = diff > best_diff
        if take:
            best = t
            best_diff = diff
    return best


cdef void sort_ascending(i64 *a, i64 m) noexcept nogil:
    cdef i64 i, j, x
    for i in range(1, m):
        x = a[i]
        j = i - 1
        while j >= 0 and a[j] > x:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = x


cdef void sort_by_residual(i64 *a, i64 m, rw node_res) noexcept nogil:
    # residual descending, id ascending
    cdef i64 i, j, x
    for i in range(1, m):
        x = a[i]
        j = i - 1
        while j >= 0 and (node_res[a[j]] < node_res[x]
                          or (node_res[a[j]] == node_res[x] and a[j] > x)):
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = x


cdef i64 embed_vnf_c(i64 u, ro sub_ptr, ro sub_adj, ro sub_lnk, ro vnf_demand, ro vnf_ptr,
                     ro vnf_adj, ro vnf_bw, rw node_res, rw link_res, rw host,
                     Need *nd, i64 *cands) noexcept nogil:
    cdef i64 d = vnf_demand[u], t = -1, best = -1, s, m, j
    placed_neighbours(u, vnf_ptr, vnf_adj, vnf_bw, host, nd)
    if nd.n == 0:
        for s in range(node_res.shape[0]):
            if node_res[s] > best:
                t = s
                best = node_res[s]
        if t < 0 or best < d:
            return -1
        commit(u, t, nd, d, 1, node_res, link_res, host, sub_ptr, sub_adj, sub_lnk)
        return t
    m = candidate_nodes(nd, sub_ptr, sub_adj, sub_lnk, cands)
    sort_by_residual(cands, m, node_res)
    for j in range(m):
        t = cands[j]
        if node_res[t] >= d and fits(t, nd, link_res, sub_ptr, sub_adj, sub_lnk):
            commit(u, t, nd, d, 1, node_res, link_res, host, sub_ptr, sub_adj, sub_lnk)
            return t
    return -1


cdef i64 embed_group_c(i64 u, bint most_negative, ro sub_ptr, ro sub_adj, ro sub_lnk,
                       ro vnf_demand, ro vnf_cum, ro vnf_ptr, ro vnf_adj, ro vnf_bw,
                       rw node_res, rw link_res, rw host, Need *nd, i64 *cands) noexcept nogil:
    cdef i64 d = vnf_demand[u], m = 0, k = 0, s, j, t
    placed_neighbours(u, vnf_ptr, vnf_adj, vnf_bw, host, nd)
    if nd.n == 0:
        for s in range(node_res.shape[0]):
            if node_res[s] >= d:
                cands[m] = s
                m += 1
    else:
        m = candidate_nodes(nd, sub_ptr, sub_adj, sub_lnk, cands)
        for j in range(m):
            t = cands[j]
            if node_res[t] >= d and fits(t, nd, link_res, sub_ptr, sub_adj, sub_lnk):
                cands[k] = t
                k += 1
        m = k
        sort_ascending(cands, m)
    t = select_c(cands, m, vnf_cum[u], most_negative, sub_ptr, sub_adj, node_res)
    if t >= 0:
        commit(u, t, nd, d, 1, node_res, link_res, host, sub_ptr, sub_adj, sub_lnk)
    return t


cdef i64 max_degree(ro ptr) noexcept nogil:
    cdef i64 best = 0, i
    for i in range(ptr.shape[0] - 1):
        if ptr[i + 1] - ptr[i] > best:
            best = ptr[i + 1] - ptr[i]
    return best


cdef class _Scratch:
    cdef Need nd
    cdef i64 *cands

    def __cinit__(self, ro sub_ptr, ro vnf_ptr, i64 n_nodes):
        cdef i64 cap = max_degree(vnf_ptr) + 1
        if need_alloc(&self.nd, cap) != 0:
            raise MemoryError()
        self.cands = <i64 *> malloc((n_nodes + max_degree(sub_ptr) + cap + 1) * sizeof(i64))
        if self.cands == NULL:
            raise MemoryError()

    def __dealloc__(self):
        need_free(&self.nd)
        free(self.cands)


def embed_vnf(i64 u, ro sub_ptr, ro sub_adj, ro sub_lnk, ro vnf_demand, ro vnf_cum, ro vnf_ptr,
              ro vnf_adj, ro vnf_bw, rw node_res, rw link_res, rw host):
    cdef _Scratch sc = _Scratch(sub_ptr, vnf_ptr, node_res.shape[0])
    return embed_vnf_c(u, sub_ptr, sub_adj, sub_lnk, vnf_demand, vnf_ptr, vnf_adj, vnf_bw,
                       node_res, link_res, host, &sc.nd, sc.cands)


def embed_group(i64 u, bint most_negative, ro sub_ptr, ro sub_adj, ro sub_lnk, ro vnf_demand,
                ro vnf_cum, ro vnf_ptr, ro vnf_adj, ro vnf_bw, rw node_res, rw link_res, rw host):
    cdef _Scratch sc = _Scratch(sub_ptr, vnf_ptr, node_res.shape[0])
    return embed_group_c(u, most_negative, sub_ptr, sub_adj, sub_lnk, vnf_demand, vnf_cum,
                         vnf_ptr, vnf_adj, vnf_bw, node_res, link_res, host, &sc.nd, sc.cands)


def run_vnf_order(ro order, ro sub_ptr, ro sub_adj, ro sub_lnk, ro vnf_demand, ro vnf_cum,
                  ro vnf_ptr, ro vnf_adj, ro vnf_bw, rw node_res, rw link_res, rw host):
    cdef _Scratch sc = _Scratch(sub_ptr, vnf_ptr, node_res.shape[0])
    cdef i64 count = 0, j
    with nogil:
        for j in range(order.shape[0]):
            if embed_vnf_c(order[j], sub_ptr, sub_adj, sub_lnk, vnf_demand, vnf_ptr, vnf_adj,
                           vnf_bw, node_res, link_res, host, &sc.nd, sc.cands) >= 0:
                count += 1
    return count


def run_group_order(ro visit, bint most_negative, ro sub_ptr, ro sub_adj, ro sub_lnk,
                    ro vnf_demand, ro vnf_cum, ro vnf_ptr, ro vnf_adj, ro vnf_bw,
                    rw node_res, rw link_res, rw host):
    cdef _Scratch sc = _Scratch(sub_ptr, vnf_ptr, node_res.shape[0])
    cdef i64 count = 0, j
    with nogil:
        for j in range(visit.shape[0]):
            if embed_group_c(visit[j], most_negative, sub_ptr, sub_adj, sub_lnk, vnf_demand,
                             vnf_cum, vnf_ptr, vnf_adj, vnf_bw, node_res, link_res, host,
                             &sc.nd, sc.cands) >= 0:
                count += 1
    return count


def select_by_difference(ro cands, i64 target, bint most_negative, ro sub_ptr, ro sub_adj,
                         rw node_res):
    cdef i64 m = cands.shape[0]
    if m == 0:
        return -1
    return select_c(<i64 *> &cands[0], m, target, most_negative, sub_ptr, sub_adj, node_res)


def build_clusters(int mode, ro vnf_ptr, ro vnf_adj, ro vnf_cum, rw visit, rw cluster_ptr,
                   rw keys):
    cdef i64 n = vnf_ptr.shape[0] - 1
    cdef i64 remaining = n, pos = 0, c = 0, v, head, best, key, k, k2, start, x
    cdef char *pooled = <char *> malloc(n + 1)
    cdef i64 *udeg = <i64 *> malloc((n + 1) * sizeof(i64))
    if pooled == NULL or udeg == NULL:
        free(pooled)
        free(udeg)
        raise MemoryError()
    try:
        with nogil:
            for v in range(n):
                pooled[v] = 1
                udeg[v] = vnf_ptr[v + 1] - vnf_ptr[v]
            cluster_ptr[0] = 0
            while remaining > 0:
                head = -1
                best = 0
                for v in range(n):
                    if pooled[v]:
                        key = udeg[v] if mode == SIZE_KEY else vnf_cum[v]
                        if head < 0 or key > best:
                            head = v
                            best = key
                start = pos
                visit[pos] = head
                pos += 1
                pooled[head] = 0
                for k in range(vnf_ptr[head], vnf_ptr[head + 1]):
                    x = vnf_adj[k]
                    if pooled[x]:
                        pooled[x] = 0
                        visit[pos] = x
                        pos += 1
                for k in range(start, pos):
                    x = visit[k]
                    for k2 in range(vnf_ptr[x], vnf_ptr[x + 1]):
                        udeg[vnf_adj[k2]] -= 1
                remaining -= pos - start
                keys[c] = best
                c += 1
                cluster_ptr[c] = pos
    finally:
        free(pooled)
        free(udeg)
    return c


cdef struct Search:
    i64 best
    i64 expansions
    i64 max_expansions
    bint aborted


cdef void dfs(i64 i, i64 count, Search *st, ro sub_ptr, ro sub_adj, ro sub_lnk, ro vnf_demand,
              ro vnf_ptr, ro vnf_adj, ro vnf_bw, rw node_res, rw link_res, rw host,
              rw best_host) noexcept nogil:
    cdef i64 n_v = vnf_demand.shape[0], n_s = node_res.shape[0], g, t, d
    cdef Need nd
    st.expansions += 1
    if st.expansions > st.max_expansions:
        st.aborted = True
        return
    if count > st.best:
        st.best = count
        for g in range(n_v):
            best_host[g] = host[g]
    if i == n_v or count + (n_v - i) <= st.best:
        return
    d = vnf_demand[i]
    if need_alloc(&nd, vnf_ptr[i + 1] - vnf_ptr[i]) != 0:
        need_free(&nd)
        st.aborted = True
        return
    placed_neighbours(i, vnf_ptr, vnf_adj, vnf_bw, host, &nd)
    for t in range(n_s):
        if node_res[t] >= d and fits(t, &nd, link_res, sub_ptr, sub_adj, sub_lnk):
            commit(i, t, &nd, d, 1, node_res, link_res, host, sub_ptr, sub_adj, sub_lnk)
            dfs(i + 1, count + 1, st, sub_ptr, sub_adj, sub_lnk, vnf_demand, vnf_ptr, vnf_adj,
                vnf_bw, node_res, link_res, host, best_host)
            commit(i, t, &nd, d, -1, node_res, link_res, host, sub_ptr, sub_adj, sub_lnk)
            if st.aborted or count + (n_v - i) <= st.best:
                need_free(&nd)
                return
    need_free(&nd)
    dfs(i + 1, count, st, sub_ptr, sub_adj, sub_lnk, vnf_demand, vnf_ptr, vnf_adj, vnf_bw,
        node_res, link_res, host, best_host)


def exact_search(i64 max_expansions, ro sub_ptr, ro sub_adj, ro sub_lnk, ro vnf_demand,
                 ro vnf_cum, ro vnf_ptr, ro vnf_adj, ro vnf_bw, rw node_res, rw link_res,
                 rw host, rw best_host):
    cdef Search st
    st.best = -1
    st.expansions = 0
    st.max_expansions = max_expansions
    st.aborted = False
    with nogil:
        dfs(0, 0, &st, sub_ptr, sub_adj, sub_lnk, vnf_demand, vnf_ptr, vnf_adj, vnf_bw,
            node_res, link_res, host, best_host)
    return st.best, min(st.expansions, max_expansions), not st.aborted

import pandas as pd
import streamlit as st

try:
    from ..domain import DesignLabError
    from ..mds import verify_mds
    from ..services import construct_mds, switch_codes
    from ..switching import lower_bound
except Exception:  # pragma: no cover
    from designlab.domain import DesignLabError  # type: ignore
    from designlab.mds import verify_mds  # type: ignore
    from designlab.services import construct_mds, switch_codes  # type: ignore
    from designlab.switching import lower_bound  # type: ignore


@st.cache_data(show_spinner=False)
def _switched_table(p: int, k: int, d: int, rho: int, count: int, seed: int) -> pd.DataFrame:
    code = construct_mds(p, k, d, rho)
    rows = []
    for assignment, switched in switch_codes(code, count, None, seed):
        rows.append({
            "atama": ",".join(map(str, assignment)),
            "kelime": len(switched),
            "farklı kelime": len(code.word_set - switched.word_set),
            "MDS": verify_mds(switched).ok,
        })
    return pd.DataFrame(rows)


def render():
    st.header("🧮 MDS Kodlar ve Anahtarlama")
    st.caption("GF(p^k) üzerinde doğrusal MDS kodlar, doğru alt kodları ve anahtarlanmış kodlar")

    col1, col2, col3, col4 = st.columns(4)
    with col1:
        p = st.selectbox("Asal p", [2, 3, 5, 7], index=1)
    with col2:
        k = st.number_input("Derece k", min_value=1, max_value=4, value=2)
    with col3:
        d = st.number_input("Uzunluk d", min_value=2, max_value=10, value=3)
    with col4:
        rho = st.number_input("Uzaklık ϱ", min_value=2, max_value=int(d), value=2)

    try:
        code = construct_mds(int(p), int(k), int(d), int(rho))
    except DesignLabError as exc:
        st.warning(f"⚠️ {exc}")
        return

    m1, m2, m3 = st.columns(3)
    with m1:
        st.metric("Kelime sayısı", f"{len(code):,}")
    with m2:
        st.metric("Alfabe", f"GF({code.q})")
    with m3:
        st.metric("Boyut m", code.m)
    st.dataframe(verify_mds(code).to_frame(), use_container_width=True)

    st.subheader("🔀 Anahtarlanmış kodlar")
    col1, col2 = st.columns(2)
    with col1:
        count = st.number_input("Kod sayısı", min_value=1, max_value=26, value=8)
    with col2:
        seed = st.number_input("Tohum", min_value=0, value=0)
    if st.button("Anahtarla", type="primary"):
        try:
            st.dataframe(_switched_table(int(p), int(k), int(d), int(rho), int(count), int(seed)), use_container_width=True)
        except DesignLabError as exc:
            st.error(f"🚨 {exc}")

    st.subheader("📐 Alt sınır hesaplayıcı")
    eps = st.slider("ε", min_value=0.05, max_value=0.95, value=round(1 / int(k), 2) if int(k) > 1 else 0.5, step=0.05)
    try:
        sonuc = lower_bound(int(p), int(k), int(d), int(rho), str(eps))
        st.dataframe(sonuc.to_frame(), use_container_width=True)
        if sonuc.vacuous:
            st.info("💡 Bu boyutta garanti boş (t < 1)")
    except DesignLabError as exc:
        st.info(f"💡 {exc}")

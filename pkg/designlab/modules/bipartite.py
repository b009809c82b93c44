import pandas as pd
import streamlit as st

try:
    from ..designs import bbd_build, verify_bbd
    from ..domain import DesignLabError
    from ..services import bbd_variant_frame
except Exception:  # pragma: no cover
    from designlab.designs import bbd_build, verify_bbd  # type: ignore
    from designlab.domain import DesignLabError  # type: ignore
    from designlab.services import bbd_variant_frame  # type: ignore


@st.cache_data(show_spinner=False)
def _build_frame(q: int, ell: int) -> pd.DataFrame:
    build = bbd_build(q, ell)
    return verify_bbd(build.bbd).to_frame()


def render():
    st.header("🧩 3-BBD Tasarımları")
    st.caption("Simetrik unipotent latin kareden iki gruplu dengeli tasarımlar ve Υ-anahtarlama")

    col1, col2 = st.columns(2)
    with col1:
        q = st.selectbox("Mertebe q (çift)", [4, 6, 8, 10, 12, 16], index=2)
    with col2:
        ell = st.number_input("Alt kare ℓ", min_value=0, max_value=q // 4, value=min(2, q // 4))

    try:
        st.dataframe(_build_frame(int(q), int(ell)), use_container_width=True)
    except DesignLabError as exc:
        st.warning(f"⚠️ {exc}")
        return

    if int(ell) > 0 and st.button("Υ-anahtarlama uygula", type="primary"):
        try:
            tablo = bbd_variant_frame(int(q), int(ell))
        except DesignLabError as exc:
            st.error(f"🚨 {exc}")
            return
        st.dataframe(tablo, use_container_width=True)
        st.bar_chart(tablo.set_index("replacement")[["removed", "added"]])
